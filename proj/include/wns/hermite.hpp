#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace wns {

// Probabilists' Hermite polynomial h_n:
//   h_0 = 1, h_1 = x, h_{n+1}(x) = x h_n(x) - n h_{n-1}(x).
template <class T>
T hermite(int n, T x) {
  if (n < 0) throw std::invalid_argument("hermite: negative degree");
  switch (n) {
    case 0: return T(1);
    case 1: return x;
    case 2: return x * x - T(1);
    case 3: return x * (x * x - T(3));
    default: break;
  }
  T hprev = x * x - T(1);
  T h = x * (x * x - T(3));
  for (int k = 3; k < n; ++k) {
    T hnext = x * h - T(k) * hprev;
    hprev = h;
    h = hnext;
  }
  return h;
}

// L^2(R, dx)-orthonormal Hermite functions, 1-based:
//   xi_n(x) = pi^{-1/4} ((n-1)!)^{-1/2} e^{-x^2/2} h_{n-1}(sqrt(2) x).
// Evaluated through the normalized recurrence; stable for n in the
// hundreds where the factorial form would overflow.
double hermite_function(int n, double x);

// xi_1 .. xi_nmax at one point.
Eigen::VectorXd hermite_function_values(int nmax, double x);

// Row i: all xi at x[i].  Columns are xi_1 .. xi_nmax.
Eigen::MatrixXd hermite_function_table(int nmax, const Eigen::VectorXd& x);

}  // namespace wns
