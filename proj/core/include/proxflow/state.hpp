#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace proxflow {

// full system state, all particle coordinates concatenated
using StateVector = std::vector<double>;

inline double dot(const StateVector& a, const StateVector& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

inline double norm(const StateVector& a) { return std::sqrt(dot(a, a)); }

inline double diff_norm(const StateVector& a, const StateVector& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    double d = a[k] - b[k];
    s += d * d;
  }
  return std::sqrt(s);
}

inline StateVector sub(const StateVector& a, const StateVector& b) {
  StateVector r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] - b[k];
  return r;
}

// a += s * b
inline void add_scaled(StateVector& a, double s, const StateVector& b) {
  for (std::size_t k = 0; k < a.size(); ++k) a[k] += s * b[k];
}

inline bool all_finite(const StateVector& a) {
  for (double v : a) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace proxflow
