#include "kinfront/sphere_integrals.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "kinfront/errors.hpp"
#include "kinfront/numerics.hpp"

namespace kinfront {

namespace {

constexpr double kAbsTol = 1e-12;
constexpr double kRelTol = 1e-10;

void require_s(double s) {
  if (!(s >= 1.0) || !std::isfinite(s)) {
    throw DomainError("sphere integral: argument s must be finite and >= 1, got " +
                      std::to_string(s));
  }
}

// Integrand after theta -> r = tan(theta/2), split at r = 1; the upper half
// is folded back onto [0, 1] with r = 1/t. Both halves then share the form
//   2^{n-1} x^{n-2} (1 + x^2)^{mu-n+1} / (c0 + c2 x^2)^mu,
// with (c0, c2) = (s+1, s-1) on the lower half and (s-1, s+1) on the upper.
double folded_integrand(int n, double mu, double c0, double c2, double x) {
  const double x2 = x * x;
  const double denom = c0 + c2 * x2;
  const double num = std::pow(2.0, n - 1) * std::pow(x, n - 2) * std::pow(1.0 + x2, mu - n + 1);
  if (mu == 1.0) return num / denom;
  return num / std::pow(denom, mu);
}

}  // namespace

SphereDim::SphereDim(int n) : n_(n) {
  if (n < 1) throw DomainError("sphere dimension must be >= 1, got " + std::to_string(n));
}

const char* to_string(PhiMethod m) {
  switch (m) {
    case PhiMethod::closed_form_1d:
      return "closed_form_1d";
    case PhiMethod::closed_form_2d:
      return "closed_form_2d";
    case PhiMethod::closed_form_3d:
      return "closed_form_3d";
    case PhiMethod::quadrature:
      return "quadrature";
  }
  return "unknown";
}

double wallis_integral(int k) {
  if (k < 0) throw DomainError("wallis_integral: k must be >= 0");
  double value = (k % 2 == 0) ? std::numbers::pi : 2.0;
  for (int j = (k % 2 == 0) ? 2 : 3; j <= k; j += 2) {
    value *= static_cast<double>(j - 1) / static_cast<double>(j);
  }
  return value;
}

double phi_quadrature(SphereDim dim, double s, double mu) {
  require_s(s);
  const int n = dim.value();
  if (n < 2) throw DomainError("phi_quadrature: requires n >= 2");
  const double lower_c0 = s + 1.0, lower_c2 = s - 1.0;
  auto lower = [&](double r) { return folded_integrand(n, mu, lower_c0, lower_c2, r); };
  auto upper = [&](double t) { return folded_integrand(n, mu, lower_c2, lower_c0, t); };
  const double omega = wallis_integral(n - 2);
  // The tolerances apply to the normalized average.
  const double lo = numerics::integrate_adaptive(lower, 0.0, 1.0, 0.5 * kAbsTol * omega, kRelTol)
                        .value;
  const double hi = numerics::integrate_adaptive(upper, 0.0, 1.0, 0.5 * kAbsTol * omega, kRelTol)
                        .value;
  return (lo + hi) / omega;
}

PhiEval phi(SphereDim dim, double s) {
  require_s(s);
  const int n = dim.value();
  PhiEval out;
  out.s = s;
  switch (n) {
    case 1:
      out.method = PhiMethod::closed_form_1d;
      out.value = s == 1.0 ? ExtendedReal::pos_inf()
                           : ExtendedReal::finite(0.5 * (1.0 / (s + 1.0) + 1.0 / (s - 1.0)));
      return out;
    case 2:
      out.method = PhiMethod::closed_form_2d;
      // s^2 - 1 written as (s-1)(s+1) to keep precision near s = 1.
      out.value = s == 1.0 ? ExtendedReal::pos_inf()
                           : ExtendedReal::finite(1.0 / std::sqrt((s - 1.0) * (s + 1.0)));
      return out;
    case 3:
      out.method = PhiMethod::closed_form_3d;
      out.value = s == 1.0 ? ExtendedReal::pos_inf()
                           : ExtendedReal::finite(0.5 * std::log1p(2.0 / (s - 1.0)));
      return out;
    default:
      out.method = PhiMethod::quadrature;
      out.value = ExtendedReal::finite(phi_quadrature(dim, s, 1.0));
      return out;
  }
}

ExtendedReal phi_power(SphereDim dim, double s, double mu) {
  require_s(s);
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw DomainError("phi_power: exponent mu must be finite and > 0");
  }
  const int n = dim.value();
  if (s == 1.0 && mu >= 0.5 * (n - 1)) return ExtendedReal::pos_inf();
  if (mu == 1.0) return phi(dim, s).value;
  if (n == 1) {
    return ExtendedReal::finite(0.5 * (std::pow(s + 1.0, -mu) + std::pow(s - 1.0, -mu)));
  }
  return ExtendedReal::finite(phi_quadrature(dim, s, mu));
}

double second_moment(SphereDim dim, std::span<const double> w) {
  const int n = dim.value();
  if (static_cast<int>(w.size()) != n) {
    throw DomainError("second_moment: w must have n components");
  }
  double norm2 = 0.0;
  for (double c : w) norm2 += c * c;
  if (!(std::abs(std::sqrt(norm2) - 1.0) <= 1e-12)) {
    throw DomainError("second_moment: w must be a unit vector");
  }
  // avg v_1^2 = 1 - I_n / I_{n-2}; the Wallis ratio is (n-1)/n. On S^0 the
  // average is 1 directly.
  const double avg_v1_sq =
      n == 1 ? 1.0 : 1.0 - wallis_integral(n) / wallis_integral(n - 2);
  return static_cast<double>(n) * avg_v1_sq * norm2;
}

}  // namespace kinfront
