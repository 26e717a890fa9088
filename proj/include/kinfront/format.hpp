#pragma once

#include <string>

namespace kinfront {

/// Round-trippable decimal form of a double (17 significant digits).
std::string format_double(double v);

}  // namespace kinfront
