#include "dynr/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace dynr {

Eigen::MatrixXd expm_taylor(const Eigen::MatrixXd& a) {
  const double nrm = a.cwiseAbs().sum();
  int squarings = 0;
  Eigen::MatrixXd b = a;
  while (b.cwiseAbs().maxCoeff() > 0.25 && squarings < 60) {
    b *= 0.5;
    ++squarings;
  }
  (void)nrm;
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(a.rows(), a.cols());
  Eigen::MatrixXd sum = term;
  for (int k = 1; k <= 24; ++k) {
    term = term * b / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

double central_diff(const std::function<double(double)>& f, double t0, double h) {
  return (f(t0 + h) - f(t0 - h)) / (2.0 * h);
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa,
               double b, double fb, double m, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double fa,
                     double b, double fb, double m, double fm, double whole,
                     double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(f, a, fa, m, fm, lm, flm);
  const double right = simpson(f, m, fm, b, fb, rm, frm);
  if (depth <= 0) return left + right;
  if (std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), m = 0.5 * (a + b), fm = f(m);
  const double whole = simpson(f, a, fa, b, fb, m, fm);
  return adaptive_step(f, a, fa, b, fb, m, fm, whole, tol, 48);
}

double find_root(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0) throw std::invalid_argument("find_root: no sign change");
  for (int it = 0; it < 200 && (b - a) > tol; ++it) {
    // secant candidate on odd steps, guaranteed bisection on even steps
    double m = 0.5 * (a + b);
    if (it % 2 == 1 && std::abs(fb - fa) > 0.0) {
      const double s = a - fa * (b - a) / (fb - fa);
      if (s > a + 0.1 * tol && s < b - 0.1 * tol) m = s;
    }
    const double fmv = f(m);
    if (fmv == 0.0) return m;
    if (fa * fmv < 0.0) {
      b = m;
      fb = fmv;
    } else {
      a = m;
      fa = fmv;
    }
  }
  return 0.5 * (a + b);
}

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const int n = static_cast<int>(x_.size());
  if (n < 2 || y_.size() != x_.size())
    throw std::invalid_argument("CubicSpline: need >= 2 matching knots");
  b_.assign(n, 0.0);
  c_.assign(n, 0.0);
  d_.assign(n, 0.0);
  if (n == 2) {
    b_[0] = b_[1] = (y_[1] - y_[0]) / (x_[1] - x_[0]);
    return;
  }
  std::vector<double> h(n - 1), alpha(n, 0.0), l(n), mu(n), z(n);
  for (int i = 0; i + 1 < n; ++i) h[i] = x_[i + 1] - x_[i];
  for (int i = 1; i + 1 < n; ++i)
    alpha[i] = 3.0 * ((y_[i + 1] - y_[i]) / h[i] - (y_[i] - y_[i - 1]) / h[i - 1]);
  l[0] = 1.0, mu[0] = 0.0, z[0] = 0.0;
  for (int i = 1; i + 1 < n; ++i) {
    l[i] = 2.0 * (x_[i + 1] - x_[i - 1]) - h[i - 1] * mu[i - 1];
    mu[i] = h[i] / l[i];
    z[i] = (alpha[i] - h[i - 1] * z[i - 1]) / l[i];
  }
  l[n - 1] = 1.0, z[n - 1] = 0.0, c_[n - 1] = 0.0;
  for (int j = n - 2; j >= 0; --j) {
    c_[j] = z[j] - mu[j] * c_[j + 1];
    b_[j] = (y_[j + 1] - y_[j]) / h[j] - h[j] * (c_[j + 1] + 2.0 * c_[j]) / 3.0;
    d_[j] = (c_[j + 1] - c_[j]) / (3.0 * h[j]);
  }
}

int CubicSpline::segment(double t) const {
  int lo = 0, hi = static_cast<int>(x_.size()) - 2;
  if (t <= x_.front()) return 0;
  if (t >= x_.back()) return hi;
  while (lo < hi) {
    const int mid = (lo + hi + 1) / 2;
    if (x_[mid] <= t)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

double CubicSpline::eval(double t) const {
  const int i = segment(t);
  const double h = t - x_[i];
  return y_[i] + h * (b_[i] + h * (c_[i] + h * d_[i]));
}

double CubicSpline::deriv(double t) const {
  const int i = segment(t);
  const double h = t - x_[i];
  return b_[i] + h * (2.0 * c_[i] + 3.0 * h * d_[i]);
}

}  // namespace dynr
