#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "recqed/ion_catalog.hpp"
#include "recqed/resonator.hpp"

namespace recqed::wgm {

/// Prefactor of the asymptotic fundamental-mode volume
/// V = 3.4 pi^(3/2) (lambda / (2 pi n))^3 ell^(11/6) sqrt(ell - m + 1).
inline constexpr double kModeVolumePrefactor = 3.4;

/// Nearest-integer azimuthal order round(2 pi R n / lambda).
long azimuthal_order(double radius, double n, double wavelength_vac);

/// Volume of the fundamental (q = 1, m = ell) whispering-gallery mode of a
/// dielectric sphere. TE/TM polarisation factors are not modelled. Throws
/// ValidationError("resonator below fundamental-mode cutoff") when ell < 1.
double fundamental_mode_volume(double radius, double n, double wavelength_vac);

/// Override if present, otherwise the fundamental-mode model.
double mode_volume(const ResonatorSpec& spec);

/// Copy of `spec` with `mode_volume_override` filled in.
ResonatorSpec resolve_mode_volume(const ResonatorSpec& spec);

enum class Target { N0_pop, N0_ph };

const char* to_string(Target t);

struct CurvePoint {
    double radius = 0.0;
    std::optional<double> Q_required;  // empty for an invalid radius
    long ell = 0;
    double mode_volume = 0.0;
    std::string error;  // reason when Q_required is empty
};

/// Quality factor at which the chosen critical number equals one for a
/// sphere of the transition's host material:
/// Q = beta (T_spon / T) chi_L with T = T1 (population) or T2/2 (phase).
double required_q(const IonTransition& t, Target target, double radius);

/// One point per radius, in input order. Invalid radii produce a point with
/// an error marker instead of aborting the curve.
std::vector<CurvePoint> radius_q_curve(const IonTransition& t, Target target,
                                       std::span<const double> radii);

/// CSV with header `radius_m,Q_required,ell,mode_volume_m3`; invalid points
/// carry `nan` in the numeric columns.
std::string curve_csv(std::span<const CurvePoint> curve);

/// n evenly spaced points in [lo, hi], geometric when `log_spacing`.
std::vector<double> make_grid(double lo, double hi, std::size_t n, bool log_spacing);

}  // namespace recqed::wgm
