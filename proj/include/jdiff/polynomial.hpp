#pragma once

#include <algorithm>
#include <vector>

namespace jdiff::poly {

// Dense polynomials stored as ascending coefficient vectors: c[0] + c[1] t + ...

template <class T>
T eval(const std::vector<T>& c, T t) {
  T acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

template <class T>
std::vector<T> derivative(const std::vector<T>& c) {
  if (c.size() <= 1) return {T(0)};
  std::vector<T> d(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = static_cast<T>(k) * c[k];
  return d;
}

template <class T>
std::vector<T> add(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> r(std::max(a.size(), b.size()), T(0));
  for (std::size_t k = 0; k < a.size(); ++k) r[k] += a[k];
  for (std::size_t k = 0; k < b.size(); ++k) r[k] += b[k];
  return r;
}

template <class T>
std::vector<T> multiply(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.empty() || b.empty()) return {T(0)};
  std::vector<T> r(a.size() + b.size() - 1, T(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

template <class T>
std::vector<T> scale(std::vector<T> c, T factor) {
  for (T& v : c) v *= factor;
  return c;
}

// Drops trailing zero coefficients, always keeping at least one entry.
template <class T>
void trim(std::vector<T>& c) {
  while (c.size() > 1 && c.back() == T(0)) c.pop_back();
  if (c.empty()) c.push_back(T(0));
}

}  // namespace jdiff::poly
