#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <vector>

#include "recqed/pulse.hpp"

/// Single-excitation dynamics of lambda-system cavity nodes: propagation
/// under a classical Raman drive, closed-form synthesis of the drive that
/// emits a prescribed photon wavepacket, and two-node throw and catch.
///
/// Conventions. A node's state is rho = (alpha, phi12, phi13): the cavity
/// amplitude and the atomic amplitudes in |2> and |3>, all with the cavity
/// in vacuum. Its equation of motion is
///
///     d rho/dt = A rho + Omega(t) B rho + sqrt(2 kappa) (beta_in, 0, 0)^T
///
/// and the field leaving the node is beta_out = sqrt(2 kappa) alpha - beta_in.
/// With these signs ||rho||^2 + integral |beta_out|^2 - integral |beta_in|^2
/// is conserved (gamma = 0) and feeding beta_out of one node into the next
/// gives the cascade coupling X = diag(2 kappa, 0, 0).
namespace recqed::dynamics {

using Vec3 = Eigen::Vector3cd;
using Mat3 = Eigen::Matrix3cd;

/// Largest allowed max(kappa, g, |Omega|) * dt for the fixed-step integrator.
inline constexpr double kMaxRateStep = 0.05;

/// Synthesis gives up rather than allocate grids longer than this.
inline constexpr double kMaxSynthesisSamples = 2e7;

struct NodeState {
    cplx alpha{};
    cplx phi12{};
    cplx phi13{};

    double norm2() const { return std::norm(alpha) + std::norm(phi12) + std::norm(phi13); }
    Vec3 vec() const { return {alpha, phi12, phi13}; }
    static NodeState from(const Vec3& v) { return {v(0), v(1), v(2)}; }

    /// Atom in |2>, cavity empty: ready to emit.
    static NodeState loaded() { return {0.0, 1.0, 0.0}; }
    /// Atom in |1>, cavity empty: ready to absorb.
    static NodeState empty() { return {}; }
};

struct NodeParams {
    double g = 0.0;
    double kappa = 0.0;
    double gamma = 0.0;  // excited-state amplitude leaks at gamma/2
};

struct SystemMatrices {
    Mat3 A;  // drift
    Mat3 B;  // control coupling
    Mat3 X;  // cascade feed from the previous node

    Mat3 generator(double omega) const { return A + omega * B; }
};

SystemMatrices make_system_matrices(const NodeParams& p);

/// Throws NumericError with a suggested step when
/// max(kappa, g, max_omega) * dt > kMaxRateStep.
void check_step(double dt, const NodeParams& p, double max_omega);

/// Largest step allowed by the resolution rule.
double max_step(const NodeParams& p, double max_omega);

struct NodeTrajectory {
    TimeGrid grid;
    std::vector<NodeState> states;
    PulseSpec output;  // beta_out on the same grid
};

/// Integrates one node with classical RK4 on the control's grid. `input`
/// (beta_in) must share that grid; pass nullopt for vacuum input.
/// Between samples the control and input are Catmull-Rom interpolated.
NodeTrajectory propagate_node(const NodeState& state0, const ControlField& control,
                              const std::optional<PulseSpec>& input, const NodeParams& p);

struct PulseDerivatives {
    cplx value{};
    cplx d1{};
    cplx d2{};
};

/// Target output wavepacket with first and second time derivatives.
class TargetPulse {
public:
    virtual ~TargetPulse() = default;
    virtual PulseDerivatives at(double t) const = 0;
    virtual double start() const = 0;
    virtual double end() const = 0;
    virtual double photon_number() const = 0;
    /// True when beta(start + end - t) = conj(beta(t)).
    virtual bool time_symmetric() const = 0;

    PulseSpec sample(const TimeGrid& grid) const;
};

/// Gaussian exp(-(t - t0)^2 / (2 sigma^2)) truncated to t0 +/- half_width sigma
/// and scaled to the requested photon number over that window. Derivatives
/// are analytic.
class GaussianPulse final : public TargetPulse {
public:
    static constexpr double kDefaultHalfWidth = 6.0;

    GaussianPulse(double sigma, double t0, double half_width = kDefaultHalfWidth,
                  double photon_number = 1.0);

    /// sigma = 10 / kappa, window [0, 2 * half_width * sigma].
    static GaussianPulse default_for(double kappa, double half_width = kDefaultHalfWidth);

    PulseDerivatives at(double t) const override;
    double start() const override { return t0_ - half_width_ * sigma_; }
    double end() const override { return t0_ + half_width_ * sigma_; }
    double photon_number() const override { return photons_; }
    bool time_symmetric() const override { return true; }

    double sigma() const { return sigma_; }
    double t0() const { return t0_; }
    double half_width() const { return half_width_; }

private:
    double sigma_;
    double t0_;
    double half_width_;
    double photons_;
    double amplitude_;
};

/// User-supplied samples, renormalised to unit photon number (an all-zero
/// pulse is kept as is). Derivatives by central differences, interpolated
/// between samples.
class SampledPulse final : public TargetPulse {
public:
    explicit SampledPulse(PulseSpec samples);

    PulseDerivatives at(double t) const override;
    double start() const override { return samples_.grid.start; }
    double end() const override { return samples_.grid.end(); }
    double photon_number() const override { return samples_.photon_number(); }
    bool time_symmetric() const override;

    const PulseSpec& samples() const { return samples_; }

private:
    PulseSpec samples_;
    std::vector<cplx> d1_;
    std::vector<cplx> d2_;
};

struct SynthesisOptions {
    double step = 0.0;            // 0: choose from the resolution rule
    double eps_den = 1e-6;        // freeze Omega once |phi12| drops below this
    std::optional<double> omega_cap;
    double imag_tolerance = 1e-6; // relative imaginary part tolerated in Omega
};

struct SynthesisResult {
    ControlField control;
    NodeTrajectory trajectory;  // co-integrated with the control
    bool truncated = false;
    double truncation_time = 0.0;
    double tail_norm = 0.0;     // target photon number after truncation
    double max_abs_omega = 0.0;
};

/// Drive Omega(t) that makes a node starting in `state0` (vacuum input)
/// emit `target`, from
///   Omega = (beta_out'' - sqrt(2k) [A^2 rho]_1) / (sqrt(2k) [A B rho]_1),
/// evaluated from the current state at every RK4 stage.
SynthesisResult synthesize_omega(const TargetPulse& target, const NodeParams& p,
                                 const NodeState& state0 = NodeState::loaded(),
                                 const SynthesisOptions& options = {});

/// Relative L2 mismatch between the target and the output of re-propagating
/// the synthesised control.
double self_consistency_error(const SynthesisResult& synthesis, const TargetPulse& target,
                              const NodeParams& p,
                              const NodeState& state0 = NodeState::loaded());

struct ThrowCatchOptions {
    SynthesisOptions synthesis;
    double delay = 0.0;  // shifts node-2 time labels only
};

struct ThrowCatchResult {
    TimeGrid grid;  // node-1 time labels; node 2 is at t + delay
    double delay = 0.0;
    std::vector<NodeState> node1;
    std::vector<NodeState> node2;
    ControlField omega1;
    ControlField omega2;
    PulseSpec link;     // beta_out of node 1 = beta_in of node 2
    PulseSpec output2;  // beta_out of node 2

    double fidelity = 0.0;        // |phi12 of node 2|^2 at the end
    double residual_flux = 0.0;   // integral |beta_out,2|^2
    double residual_node1 = 0.0;  // ||rho_1||^2 at the end
    double lost_norm = 0.0;       // spontaneous emission out of the tracked subspace
    double conservation_defect = 0.0;
    double tail_truncation = 0.0;
    bool truncated = false;
    bool symmetric_target = true;
    double self_consistency = 0.0;
    double step = 0.0;
};

/// Emits `target` at node 1 with the synthesised drive and catches it at
/// an identical node 2 driven with the time-reversed field
/// Omega_2(t) = Omega_1(t_start + t_end - t). Both nodes are integrated as
/// one cascaded system.
ThrowCatchResult run_throw_catch(const TargetPulse& target, const NodeParams& p,
                                 const ThrowCatchOptions& options = {});

}  // namespace recqed::dynamics
