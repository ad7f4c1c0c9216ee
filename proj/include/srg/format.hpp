#pragma once

#include <string>

namespace srg {

/// Shortest round-trip decimal form; "inf", "-inf" and "nan" for non-finite.
std::string format_double(double v);

}  // namespace srg
