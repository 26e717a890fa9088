#include "kinfront/extended_real.hpp"

#include <limits>
#include <stdexcept>

#include "kinfront/format.hpp"

namespace kinfront {

double ExtendedReal::value() const {
  if (kind_ != Kind::finite) throw std::logic_error("ExtendedReal::value() on an infinite marker");
  return value_;
}

double ExtendedReal::to_double() const {
  switch (kind_) {
    case Kind::pos_inf:
      return std::numeric_limits<double>::infinity();
    case Kind::neg_inf:
      return -std::numeric_limits<double>::infinity();
    case Kind::finite:
      break;
  }
  return value_;
}

std::string ExtendedReal::to_string() const {
  switch (kind_) {
    case Kind::pos_inf:
      return "inf";
    case Kind::neg_inf:
      return "-inf";
    case Kind::finite:
      break;
  }
  return format_double(value_);
}

namespace {
int rank(ExtendedReal::Kind k) {
  switch (k) {
    case ExtendedReal::Kind::neg_inf:
      return -1;
    case ExtendedReal::Kind::pos_inf:
      return 1;
    case ExtendedReal::Kind::finite:
      break;
  }
  return 0;
}
}  // namespace

std::partial_ordering operator<=>(const ExtendedReal& a, const ExtendedReal& b) {
  const int ra = rank(a.kind_);
  const int rb = rank(b.kind_);
  if (ra != rb) return ra <=> rb;
  if (a.kind_ != ExtendedReal::Kind::finite) return std::partial_ordering::equivalent;
  return a.value_ <=> b.value_;
}

bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
  return (a <=> b) == std::partial_ordering::equivalent;
}

}  // namespace kinfront
