#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "recqed/pulse.hpp"

/// Weak-probe response of a resonant atom-cavity pair with the atom treated
/// as a harmonic oscillator. Detuning delta is the probe offset from the
/// common resonance; a probe component e^{i delta t} is reflected with
/// r(delta) and scattered into free space with e(delta).
namespace recqed::response {

struct ResponseSystem {
    double g = 0.0;
    double kappa = 0.0;
    double gamma = 0.0;
    bool atom_present = true;

    double effective_g() const { return atom_present ? g : 0.0; }
    /// 2 g^2 / (kappa gamma).
    double cooperativity() const;
};

/// Throws ValidationError unless kappa > 0, gamma >= 0, g >= 0.
void validate(const ResponseSystem& s);

struct SpectralPoint {
    double delta = 0.0;
    cplx r{};              // a_out / a_in
    cplx e{};              // s_out / a_in
    double phase = 0.0;    // arg r; unwrapped along a sweep
    double emission_prob = 0.0;
};

/// r = [g^2 + (i delta + gamma/2)(i delta - kappa)] / D,
/// e = sqrt(2) g sqrt(kappa gamma) / D,  D = g^2 + (i delta + gamma/2)(i delta + kappa).
/// Phase is the principal value in (-pi, pi].
SpectralPoint response_at(const ResponseSystem& s, double delta);

/// Pointwise response with the phase unwrapped along the sweep and anchored
/// so the point nearest zero detuning lies in (-pi, pi].
std::vector<SpectralPoint> spectrum(const ResponseSystem& s, std::span<const double> deltas);

struct CooperativityPoint {
    double C = 0.0;
    cplx r0{};
    double phase_at_0 = 0.0;
    double emission_at_0 = 0.0;
};

/// Zero-detuning response for g = sqrt(C kappa gamma / 2). Requires gamma > 0.
std::vector<CooperativityPoint> cooperativity_sweep(double kappa, double gamma,
                                                    std::span<const double> C_values);

/// Eigenvalues of the zero-detuning drift matrix [[-kappa, g], [-g, -gamma/2]],
/// slow (largest real part) first. Poles of r sit at these values shifted by -i delta.
std::array<cplx, 2> drift_eigenvalues(const ResponseSystem& s);

/// -Re of the slow eigenvalue.
double slow_decay_rate(const ResponseSystem& s);

/// g^2/kappa + gamma/2, the decay rate left after eliminating the cavity.
double eliminated_decay_rate(const ResponseSystem& s);

struct FidOptions {
    double extent_factor = 20.0;      // angular frequency span >= extent_factor * kappa
    double resolution_divisor = 10.0; // step <= min(gamma/2, g^2/kappa) / divisor
    double band_tolerance = 1e-6;     // probe energy allowed beyond half Nyquist
};

struct FidResult {
    PulseSpec output;         // on the (possibly zero-padded) probe grid
    std::size_t fft_size = 0;
    double frequency_step = 0.0;    // rad/s
    double frequency_extent = 0.0;  // rad/s, 2 pi / dt
};

/// Reflected field for an arbitrary weak probe: IDFT(DFT(probe) * r(omega_k)).
/// The probe is zero-padded (to a power of two) until the frequency grid
/// resolves the atomic feature. Throws ValidationError when the sampling is
/// too coarse for the cavity line or the probe's band reaches the grid edge.
FidResult fid_signal(const ResponseSystem& s, const PulseSpec& probe, const FidOptions& opt = {});

/// Gaussian probe exp(-(t - center)^2 / (2 width^2)) on `grid`.
PulseSpec gaussian_probe(const TimeGrid& grid, double center, double width);

/// Least-squares exponential decay rate of |signal| over [t_begin, t_end].
double fit_decay_rate(const PulseSpec& signal, double t_begin, double t_end);

/// `delta_rad_s,r_re,r_im,phase_unwrapped,emission_prob`
std::string spectrum_csv(std::span<const SpectralPoint> points);

/// `t,out_re,out_im,abs`, rows with t <= t_max.
std::string fid_csv(const PulseSpec& signal, double t_max);

}  // namespace recqed::response
