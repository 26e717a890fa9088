#pragma once

#include <span>

#include "kinfront/extended_real.hpp"

namespace kinfront {

/// Dimension n of the ambient space; averages are taken over S^{n-1}.
class SphereDim {
 public:
  explicit SphereDim(int n);
  int value() const { return n_; }

 private:
  int n_;
};

enum class PhiMethod { closed_form_1d, closed_form_2d, closed_form_3d, quadrature };

const char* to_string(PhiMethod m);

struct PhiEval {
  double s = 1.0;
  ExtendedReal value;
  PhiMethod method = PhiMethod::quadrature;
};

/// Normalized sphere average  Phi(s) = avg_{S^{n-1}} dv / (s + v_1),  s >= 1.
///
/// Closed forms for n = 1, 2, 3; adaptive quadrature of the r = tan(theta/2)
/// form otherwise. Phi(1) is +inf exactly for n <= 3.
PhiEval phi(SphereDim n, double s);

/// avg_{S^{n-1}} dv / (s + v_1)^mu. At s = 1 this is +inf iff mu >= (n-1)/2.
ExtendedReal phi_power(SphereDim n, double s, double mu);

/// Quadrature route for Phi, usable for every n >= 2. Closed forms are
/// checked against this.
double phi_quadrature(SphereDim n, double s, double mu = 1.0);

/// Wallis integral I_k = int_0^pi sin^k(theta) d theta, by the recurrence
/// I_k = I_{k-2} (k-1)/k from I_0 = pi, I_1 = 2.
double wallis_integral(int k);

/// avg_{S^{n-1}} n (v.w)^2 dv for a unit vector w (equals 1).
double second_moment(SphereDim n, std::span<const double> w);

}  // namespace kinfront
