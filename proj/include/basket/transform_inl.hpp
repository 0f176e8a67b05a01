#pragma once

#include <cmath>
#include <numbers>

namespace basket {

inline double diffusion_profile(double eta) {
    const double s = std::sin(std::numbers::pi * eta);
    const double s2 = s * s;
    return s2 * s2 / (2.0 * std::numbers::pi * std::numbers::pi);
}

inline double convection_profile(double eta) {
    const double s = std::sin(std::numbers::pi * eta);
    const double c = std::cos(std::numbers::pi * eta);
    return s * s * s * c / std::numbers::pi;
}

}  // namespace basket
