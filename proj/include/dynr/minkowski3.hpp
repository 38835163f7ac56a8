#pragma once

#include <Eigen/Dense>

namespace dynr {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Metric signature (+,-,-): eta = diag(1,-1,-1).
Mat3 minkowski_metric();

/// eta(x,y) = x^0 y^0 - x^1 y^1 - x^2 y^2.
double minkowski_dot(const Vec3& x, const Vec3& y);

/// Lower the index: x_a = eta_{ab} x^b.
Vec3 lower_index(const Vec3& x);

/// Totally antisymmetric tensor, all indices down, eps_{012} = 1.
/// Indices must lie in {0,1,2}.
double epsilon_lower(int a, int b, int c);

/// All indices raised with eta: eps^{abc} = eta^{aa'} eta^{bb'} eta^{cc'} eps_{a'b'c'}.
double epsilon_upper(int a, int b, int c);

/// Lorentzian wedge product, (x ^ y)^a = eps^{abc} x_b y_c.
/// Not the Euclidean cross product: e0^e1 = -e2, e1^e2 = e0, e0^e2 = e1.
Vec3 wedge(const Vec3& x, const Vec3& y);

enum class CausalType { Timelike, Spacelike, Lightlike };

/// Classification of x by the sign of x.x, with |x.x| <= tol counting as
/// lightlike. The default tolerance scales with the Euclidean size of x.
CausalType causal_type(const Vec3& x, double tol = -1.0);

const char* to_string(CausalType t);

}  // namespace dynr
