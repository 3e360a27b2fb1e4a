#pragma once

#include <optional>

namespace recqed {

/// Geometry and quality of a spherical whispering-gallery resonator.
/// `mode_volume_override` bypasses the fundamental-mode model.
struct ResonatorSpec {
    double radius = 0.0;          // m
    double n = 1.0;               // refractive index
    double wavelength_vac = 0.0;  // m
    double Q = 0.0;
    std::optional<double> mode_volume_override;  // m^3
};

}  // namespace recqed
