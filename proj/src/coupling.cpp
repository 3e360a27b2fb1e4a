#include "recqed/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "recqed/constants.hpp"
#include "recqed/error.hpp"

namespace recqed {

namespace cst = constants;

namespace {

constexpr double kCrossCheckTolerance = 1e-9;

void require_positive(double v, const char* what) {
    if (!(v > 0) || !std::isfinite(v)) {
        throw ValidationError(std::string(what) + " must be positive and finite");
    }
}

bool close(double a, double b) {
    if (a == b) return true;
    return std::abs(a - b) <= kCrossCheckTolerance * std::max(std::abs(a), std::abs(b));
}

}  // namespace

double local_field_factor(double n) {
    const double x = (n * n + 2.0) / 3.0;
    return x * x;
}

double transition_omega(double wavelength_vac) {
    require_positive(wavelength_vac, "wavelength");
    return 2.0 * cst::pi * cst::c / wavelength_vac;
}

double dipole_moment(const IonTransition& t) {
    validate(t);
    const double n = t.host_index;
    const double omega = transition_omega(t.wavelength_vac);
    const double mu2 = 3.0 * cst::hbar * cst::e * cst::e * n * t.oscillator_strength /
                       (2.0 * cst::m_e * omega * local_field_factor(n));
    return std::sqrt(mu2);
}

double spontaneous_time(const IonTransition& t) {
    const double mu = dipole_moment(t);
    const double n = t.host_index;
    const double lambda = t.wavelength_vac;
    return 3.0 * cst::epsilon0 * cst::hbar * lambda * lambda * lambda /
           (8.0 * cst::pi * cst::pi * n * local_field_factor(n) * mu * mu);
}

double cavity_kappa(double wavelength, double Q) {
    require_positive(wavelength, "wavelength");
    require_positive(Q, "Q");
    return cst::pi * cst::c / (wavelength * Q);
}

double coupling_g(const IonTransition& t, double mode_volume) {
    require_positive(mode_volume, "mode volume");
    const double omega = transition_omega(t.wavelength_vac);
    return dipole_moment(t) / t.host_index *
           std::sqrt(omega / (2.0 * cst::hbar * cst::epsilon0 * mode_volume));
}

double beta_parameter(double mode_volume, double n, double wavelength) {
    require_positive(mode_volume, "mode volume");
    require_positive(n, "refractive index");
    require_positive(wavelength, "wavelength");
    return 8.0 * cst::pi * cst::pi * n * n * n * mode_volume /
           (3.0 * wavelength * wavelength * wavelength);
}

CriticalNumbers critical_numbers(const RatesInput& r) {
    require_positive(r.g, "g");
    if (r.kappa < 0 || r.gamma < 0 || r.gamma_p < 0) {
        throw ValidationError("rates kappa, gamma, gamma_p must be non-negative");
    }
    const double g2 = r.g * r.g;
    return {r.gamma * r.kappa / g2, 2.0 * r.gamma_h() * r.kappa / g2,
            r.gamma * r.gamma_h() / (4.0 * g2)};
}

CriticalNumbers critical_numbers_from_beta(double beta, double Q, double T_spon, double chi_L,
                                           double T1, double T2, double wavelength) {
    return {beta / Q * (T_spon / T1) * chi_L, 2.0 * beta / Q * (T_spon / T2) * chi_L,
            wavelength * beta / (4.0 * cst::pi * cst::c) * (T_spon / (T1 * T2)) * chi_L};
}

RatesInput transition_rates(const IonTransition& t, double g, double kappa) {
    const double gamma = 1.0 / t.T1;
    // T2 <= 2 T1 keeps this non-negative up to rounding.
    const double gamma_p = std::max(0.0, 1.0 / t.T2 - gamma / 2.0);
    return {g, kappa, gamma, gamma_p};
}

CavityFigures figures(const IonTransition& t, const ResonatorSpec& resonator) {
    validate(t);
    if (!resonator.mode_volume_override) {
        throw ValidationError(
            "resonator has no mode volume; resolve it with the WGM model "
            "(wgm::resolve_mode_volume) or set mode_volume_override");
    }
    CavityFigures f;
    f.mode_volume = *resonator.mode_volume_override;
    f.mu = dipole_moment(t);
    f.T_spon = spontaneous_time(t);
    f.chi_L = local_field_factor(t.host_index);
    f.beta = beta_parameter(f.mode_volume, t.host_index, t.wavelength_vac);
    f.g = coupling_g(t, f.mode_volume);
    f.kappa = cavity_kappa(t.wavelength_vac, resonator.Q);

    const RatesInput rates = transition_rates(t, f.g, f.kappa);
    f.gamma = rates.gamma;
    f.gamma_h = rates.gamma_h();

    const CriticalNumbers by_rate = critical_numbers(rates);
    const CriticalNumbers by_beta = critical_numbers_from_beta(
        f.beta, resonator.Q, f.T_spon, f.chi_L, t.T1, t.T2, t.wavelength_vac);
    if (!close(by_rate.N0_pop, by_beta.N0_pop) || !close(by_rate.N0_ph, by_beta.N0_ph) ||
        !close(by_rate.n0, by_beta.n0)) {
        throw NumericError("critical-number cross-check failed for '" + t.id + "'");
    }
    f.N0_pop = by_beta.N0_pop;
    f.N0_ph = by_beta.N0_ph;
    f.n0 = by_beta.n0;
    return f;
}

}  // namespace recqed
