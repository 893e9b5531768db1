#pragma once

#include <cmath>
#include <cstddef>

namespace gom {

/// ceil(ratio * n), robust to products like 0.1 * 200 landing a hair above
/// an integer.
inline std::size_t ceil_fraction(double ratio, std::size_t n) {
    const double exact = ratio * static_cast<double>(n);
    const double rounded = std::round(exact);
    if (std::abs(exact - rounded) < 1e-9 * (1.0 + rounded)) return static_cast<std::size_t>(rounded);
    return static_cast<std::size_t>(std::ceil(exact));
}

}  // namespace gom
