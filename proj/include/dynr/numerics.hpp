#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace dynr {

/// Matrix exponential by scaling-and-squaring with a Taylor kernel.
/// Used as a convention-free oracle against the closed-form exponentials.
Eigen::MatrixXd expm_taylor(const Eigen::MatrixXd& a);

/// Central difference d/dt f(t0) with step h.
double central_diff(const std::function<double(double)>& f, double t0, double h);

/// Adaptive Simpson quadrature of f on [a,b] to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-10);

/// Root of f on a bracketing interval [a,b] (f(a)f(b) <= 0) by bisection
/// with a secant acceleration step, to absolute tolerance tol on x.
double find_root(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-12);

/// Natural cubic spline through (x_i, y_i); x strictly increasing.
/// Evaluation outside [x_front, x_back] extrapolates the boundary cubic.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> x, std::vector<double> y);

  double eval(double t) const;
  double deriv(double t) const;

 private:
  std::vector<double> x_, y_, b_, c_, d_;  // y + h b + h^2 c + h^3 d
  int segment(double t) const;
};

}  // namespace dynr
