#pragma once

#include "recqed/ion_catalog.hpp"
#include "recqed/resonator.hpp"

namespace recqed {

/// Rates entering the Langevin equations, all angular (rad/s).
struct RatesInput {
    double g = 0.0;
    double kappa = 0.0;
    double gamma = 0.0;    // population decay, 1/T1
    double gamma_p = 0.0;  // excess dephasing

    double gamma_h() const { return gamma / 2.0 + gamma_p; }
};

struct CriticalNumbers {
    double N0_pop = 0.0;
    double N0_ph = 0.0;
    double n0 = 0.0;
};

/// Figures of merit for one (transition, resonator) pair. Rates in rad/s.
struct CavityFigures {
    double mu = 0.0;       // C m
    double T_spon = 0.0;   // s
    double chi_L = 0.0;
    double beta = 0.0;
    double mode_volume = 0.0;  // m^3
    double g = 0.0;
    double kappa = 0.0;
    double gamma = 0.0;
    double gamma_h = 0.0;
    double N0_pop = 0.0;
    double N0_ph = 0.0;
    double n0 = 0.0;
};

/// Local-field correction ((n^2+2)/3)^2.
double local_field_factor(double n);

/// Angular transition frequency 2 pi c / lambda_vac.
double transition_omega(double wavelength_vac);

/// Transition dipole moment from the oscillator strength, including the
/// local-field correction of the host.
double dipole_moment(const IonTransition& t);

/// Radiative lifetime the transition would have as an isolated two-level
/// system: 3 eps0 hbar lambda^3 / (8 pi^2 n chi_L mu^2).
double spontaneous_time(const IonTransition& t);

/// Cavity field decay rate pi c / (lambda Q).
double cavity_kappa(double wavelength, double Q);

/// Single-photon coupling (mu/n) sqrt(omega / (2 hbar eps0 V)).
double coupling_g(const IonTransition& t, double mode_volume);

/// Mode volume in units of the reduced cubic wavelength: 8 pi^2 n^3 V / (3 lambda^3).
double beta_parameter(double mode_volume, double n, double wavelength);

/// N0(pop) = gamma kappa / g^2, N0(ph) = 2 gamma_h kappa / g^2,
/// n0 = gamma gamma_h / (4 g^2). Requires g > 0.
CriticalNumbers critical_numbers(const RatesInput& rates);

/// The same three numbers written through beta, Q and the transition times.
CriticalNumbers critical_numbers_from_beta(double beta, double Q, double T_spon, double chi_L,
                                           double T1, double T2, double wavelength);

/// Rates implied by the catalog: gamma = 1/T1, gamma_h = 1/T2.
RatesInput transition_rates(const IonTransition& t, double g, double kappa);

/// Full figure-of-merit bundle. The resonator must carry a mode volume
/// (set `mode_volume_override`, e.g. from wgm::resolve_mode_volume); the
/// beta-form and rate-form critical numbers are cross-checked to 1e-9.
CavityFigures figures(const IonTransition& t, const ResonatorSpec& resonator);

}  // namespace recqed
