#pragma once

#include <compare>
#include <string>

namespace kinfront {

/// A real number that may also be +infinity or -infinity.
///
/// Infinite values are tagged explicitly rather than stored as IEEE
/// infinities, so a divergent integral can never be confused with a
/// floating-point overflow.
class ExtendedReal {
 public:
  enum class Kind { finite, pos_inf, neg_inf };

  constexpr ExtendedReal() = default;

  static constexpr ExtendedReal finite(double v) { return ExtendedReal(Kind::finite, v); }
  static constexpr ExtendedReal pos_inf() { return ExtendedReal(Kind::pos_inf, 0.0); }
  static constexpr ExtendedReal neg_inf() { return ExtendedReal(Kind::neg_inf, 0.0); }

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_finite() const { return kind_ == Kind::finite; }
  constexpr bool is_pos_inf() const { return kind_ == Kind::pos_inf; }
  constexpr bool is_neg_inf() const { return kind_ == Kind::neg_inf; }

  /// The finite value. Throws std::logic_error on an infinite marker.
  double value() const;

  /// IEEE representation, for output and plotting only.
  double to_double() const;

  std::string to_string() const;

  friend std::partial_ordering operator<=>(const ExtendedReal& a, const ExtendedReal& b);
  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b);

 private:
  constexpr ExtendedReal(Kind k, double v) : kind_(k), value_(v) {}

  Kind kind_ = Kind::finite;
  double value_ = 0.0;
};

}  // namespace kinfront
