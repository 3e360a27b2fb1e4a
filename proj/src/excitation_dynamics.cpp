#include "recqed/excitation_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "recqed/error.hpp"
#include "recqed/format.hpp"

namespace recqed::dynamics {

namespace {

constexpr cplx I{0.0, 1.0};

void validate(const NodeParams& p) {
    if (!(p.g > 0) || !(p.kappa > 0) || !(p.gamma >= 0) || !std::isfinite(p.g) ||
        !std::isfinite(p.kappa) || !std::isfinite(p.gamma)) {
        throw ValidationError("node requires g > 0, kappa > 0, gamma >= 0");
    }
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (const double x : v) m = std::max(m, std::abs(x));
    return m;
}

template <typename State, typename Rhs>
State rk4_step(const Rhs& rhs, double t, const State& y, double dt) {
    const State k1 = rhs(t, y);
    const State k2 = rhs(t + 0.5 * dt, State(y + (0.5 * dt) * k1));
    const State k3 = rhs(t + 0.5 * dt, State(y + (0.5 * dt) * k2));
    const State k4 = rhs(t + dt, State(y + dt * k3));
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Trapezoid integral of |v|^2 over samples [from, end).
double tail_integral(std::span<const cplx> v, std::size_t from, double dt) {
    double sum = 0.0;
    for (std::size_t i = from; i + 1 < v.size(); ++i) {
        sum += 0.5 * (std::norm(v[i]) + std::norm(v[i + 1]));
    }
    return sum * dt;
}

}  // namespace

SystemMatrices make_system_matrices(const NodeParams& p) {
    SystemMatrices m;
    m.A << -p.kappa, 0.0, -I * p.g,
           0.0, 0.0, 0.0,
           -I * p.g, 0.0, -p.gamma / 2.0;
    m.B << 0.0, 0.0, 0.0,
           0.0, 0.0, -I,
           0.0, -I, 0.0;
    m.X.setZero();
    m.X(0, 0) = 2.0 * p.kappa;
    return m;
}

double max_step(const NodeParams& p, double max_omega) {
    return kMaxRateStep / std::max({p.kappa, p.g, std::abs(max_omega)});
}

void check_step(double dt, const NodeParams& p, double max_omega) {
    const double limit = max_step(p, max_omega);
    if (dt > limit * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "time step " << format_double(dt) << " violates max(kappa, g, |Omega|) * dt <= "
           << kMaxRateStep << "; use dt <= " << format_double(limit);
        throw NumericError(os.str());
    }
}

NodeTrajectory propagate_node(const NodeState& state0, const ControlField& control,
                              const std::optional<PulseSpec>& input, const NodeParams& p) {
    validate(p);
    const TimeGrid& grid = control.grid;
    if (control.omega.size() != grid.size()) {
        throw ValidationError("control samples do not match its time grid");
    }
    if (input && (!(input->grid == grid) || input->values.size() != grid.size())) {
        throw ValidationError("input pulse must share the control's uniform time grid");
    }
    check_step(grid.dt, p, max_abs(control.omega));

    const SystemMatrices m = make_system_matrices(p);
    const double s2k = std::sqrt(2.0 * p.kappa);
    const std::span<const double> om(control.omega);
    std::span<const cplx> in;
    if (input) in = input->values;

    auto beta_in = [&](double t) { return in.empty() ? cplx{} : interpolate(in, grid, t); };
    auto rhs = [&](double t, const Vec3& r) -> Vec3 {
        Vec3 d = m.generator(interpolate(om, grid, t)) * r;
        d(0) += s2k * beta_in(t);
        return d;
    };

    NodeTrajectory out;
    out.grid = grid;
    out.states.reserve(grid.size());
    out.output.grid = grid;
    out.output.values.reserve(grid.size());

    Vec3 r = state0.vec();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid.time(i);
        out.states.push_back(NodeState::from(r));
        out.output.values.push_back(s2k * r(0) - (in.empty() ? cplx{} : in[i]));
        if (i + 1 < grid.size()) r = rk4_step(rhs, t, r, grid.dt);
    }
    return out;
}

// -- target pulses --------------------------------------------------------

PulseSpec TargetPulse::sample(const TimeGrid& grid) const {
    PulseSpec s{grid, {}};
    s.values.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) s.values.push_back(at(grid.time(i)).value);
    return s;
}

GaussianPulse::GaussianPulse(double sigma, double t0, double half_width, double photon_number)
    : sigma_(sigma), t0_(t0), half_width_(half_width), photons_(photon_number) {
    if (!(sigma > 0) || !(half_width > 0) || !(photon_number >= 0) || !std::isfinite(t0)) {
        throw ValidationError("Gaussian pulse needs sigma > 0, half_width > 0, photons >= 0");
    }
    // Integral of exp(-x^2/sigma^2) over |x| <= h sigma is sigma sqrt(pi) erf(h).
    const double window = sigma * std::sqrt(std::numbers::pi) * std::erf(half_width);
    amplitude_ = std::sqrt(photon_number / window);
}

GaussianPulse GaussianPulse::default_for(double kappa, double half_width) {
    if (!(kappa > 0)) throw ValidationError("kappa must be positive");
    const double sigma = 10.0 / kappa;
    return GaussianPulse(sigma, half_width * sigma, half_width);
}

PulseDerivatives GaussianPulse::at(double t) const {
    const double x = t - t0_;
    if (std::abs(x) > half_width_ * sigma_ * (1.0 + 1e-12)) return {};
    const double s2 = sigma_ * sigma_;
    const double b = amplitude_ * std::exp(-x * x / (2.0 * s2));
    return {b, -x / s2 * b, (x * x / (s2 * s2) - 1.0 / s2) * b};
}

SampledPulse::SampledPulse(PulseSpec samples) : samples_(std::move(samples)) {
    const std::size_t n = samples_.values.size();
    if (n != samples_.grid.size()) throw ValidationError("pulse samples do not match grid");
    if (n < 4) throw ValidationError("sampled pulse needs at least four samples");
    const double norm = samples_.photon_number();
    if (norm > 0) {
        const double scale = 1.0 / std::sqrt(norm);
        for (cplx& v : samples_.values) v *= scale;
    }
    const auto& v = samples_.values;
    const double dt = samples_.grid.dt;
    d1_.resize(n);
    d2_.resize(n);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        d1_[i] = (v[i + 1] - v[i - 1]) / (2.0 * dt);
        d2_[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / (dt * dt);
    }
    d1_[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * dt);
    d1_[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * dt);
    d2_[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / (dt * dt);
    d2_[n - 1] = (2.0 * v[n - 1] - 5.0 * v[n - 2] + 4.0 * v[n - 3] - v[n - 4]) / (dt * dt);
}

PulseDerivatives SampledPulse::at(double t) const {
    const TimeGrid& g = samples_.grid;
    if (t < g.start - 1e-12 * g.dt || t > g.end() + 1e-12 * g.dt) return {};
    return {interpolate<cplx>(samples_.values, g, t), interpolate<cplx>(d1_, g, t),
            interpolate<cplx>(d2_, g, t)};
}

bool SampledPulse::time_symmetric() const {
    const auto& v = samples_.values;
    double peak = 0.0;
    for (const cplx& x : v) peak = std::max(peak, std::abs(x));
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (std::abs(v[i] - std::conj(v[v.size() - 1 - i])) > 1e-9 * peak) return false;
    }
    return true;
}

// -- synthesis ------------------------------------------------------------

namespace {

SynthesisResult synthesize_on_grid(const TargetPulse& target, const NodeParams& p,
                                   const NodeState& state0, const SynthesisOptions& opt,
                                   const TimeGrid& grid) {
    const SystemMatrices m = make_system_matrices(p);
    const double s2k = std::sqrt(2.0 * p.kappa);
    const Eigen::RowVector3cd a2_row = (m.A * m.A).row(0);
    const Eigen::RowVector3cd ab_row = (m.A * m.B).row(0);

    SynthesisResult res;
    res.control.grid = grid;
    res.control.omega.reserve(grid.size());
    res.trajectory.grid = grid;
    res.trajectory.output.grid = grid;

    bool frozen = false;
    double held = 0.0;

    auto omega_at = [&](double t, const Vec3& r) -> double {
        if (frozen || std::abs(r(1)) < opt.eps_den) return held;
        const PulseDerivatives d = target.at(t);
        const cplx num = d.d2 - s2k * (a2_row * r)(0);
        const cplx den = s2k * (ab_row * r)(0);
        const cplx om = num / den;
        if (std::abs(om.imag()) > opt.imag_tolerance * std::max(1.0, std::abs(om.real()))) {
            throw NumericError("target requires a complex Rabi field at t = " + format_double(t) +
                               " (Omega = " + format_double(om.real()) + " + " +
                               format_double(om.imag()) + "i); only real drives are supported");
        }
        if (opt.omega_cap && std::abs(om.real()) > *opt.omega_cap) {
            throw NumericError("required |Omega| = " + format_double(std::abs(om.real())) +
                               " exceeds cap " + format_double(*opt.omega_cap) + " at t = " +
                               format_double(t));
        }
        return om.real();
    };
    auto rhs = [&](double t, const Vec3& r) -> Vec3 { return m.generator(omega_at(t, r)) * r; };

    Vec3 r = state0.vec();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid.time(i);
        if (!frozen && std::abs(r(1)) < opt.eps_den) {
            frozen = true;
            res.truncated = true;
            res.truncation_time = t;
        }
        const double om = omega_at(t, r);
        held = om;
        res.control.omega.push_back(om);
        res.max_abs_omega = std::max(res.max_abs_omega, std::abs(om));
        res.trajectory.states.push_back(NodeState::from(r));
        res.trajectory.output.values.push_back(s2k * r(0));
        if (i + 1 < grid.size()) r = rk4_step(rhs, t, r, grid.dt);
    }
    if (res.truncated) {
        const PulseSpec sampled = target.sample(grid);
        const auto from = static_cast<std::size_t>(
            std::lround((res.truncation_time - grid.start) / grid.dt));
        res.tail_norm = tail_integral(sampled.values, from, grid.dt);
    }
    return res;
}

}  // namespace

SynthesisResult synthesize_omega(const TargetPulse& target, const NodeParams& p,
                                 const NodeState& state0, const SynthesisOptions& options) {
    validate(p);
    if (!(options.eps_den > 0)) throw ValidationError("eps_den must be positive");
    if (target.photon_number() > 1.0 + 1e-9) {
        throw ValidationError("target pulse carries more than one photon");
    }
    if (options.step > 0) {
        if ((target.end() - target.start()) / options.step > kMaxSynthesisSamples) {
            throw ValidationError("time step " + format_double(options.step) +
                                  " gives more than " + format_double(kMaxSynthesisSamples) +
                                  " samples");
        }
        const TimeGrid grid = covering_grid(target.start(), target.end(), options.step);
        check_step(grid.dt, p, 0.0);
        SynthesisResult res = synthesize_on_grid(target, p, state0, options, grid);
        check_step(grid.dt, p, res.max_abs_omega);
        return res;
    }
    // Automatic step: refine until the synthesised drive satisfies the rule.
    double dt = max_step(p, 0.0);
    for (int attempt = 0; attempt < 8; ++attempt) {
        if ((target.end() - target.start()) / dt > kMaxSynthesisSamples) {
            throw NumericError("synthesised drive needs a step below " + format_double(dt) +
                               " (|Omega| keeps growing); the target is likely not reachable "
                               "from this state, e.g. spontaneous loss leaves too little "
                               "excitation for the requested photon number");
        }
        const TimeGrid grid = covering_grid(target.start(), target.end(), dt);
        SynthesisResult res = synthesize_on_grid(target, p, state0, options, grid);
        const double limit = max_step(p, res.max_abs_omega);
        if (grid.dt <= limit * (1.0 + 1e-12)) return res;
        dt = 0.9 * limit;
    }
    throw NumericError("could not find a time step satisfying the resolution rule; the "
                       "synthesised drive keeps growing as the step is refined");
}

double self_consistency_error(const SynthesisResult& synthesis, const TargetPulse& target,
                              const NodeParams& p, const NodeState& state0) {
    const NodeTrajectory rerun = propagate_node(state0, synthesis.control, std::nullopt, p);
    const PulseSpec want = target.sample(synthesis.control.grid);
    const double err = l2_distance(rerun.output, want);
    const double norm = std::sqrt(want.photon_number());
    return norm > 0 ? err / norm : err;
}

// -- throw and catch --------------------------------------------------------

ThrowCatchResult run_throw_catch(const TargetPulse& target, const NodeParams& p,
                                 const ThrowCatchOptions& options) {
    validate(p);
    if (!(options.delay >= 0) || !std::isfinite(options.delay)) {
        throw ValidationError("delay must be non-negative");
    }
    const NodeState start1 = NodeState::loaded();
    SynthesisResult synth = synthesize_omega(target, p, start1, options.synthesis);

    ThrowCatchResult out;
    out.grid = synth.control.grid;
    out.step = out.grid.dt;
    out.delay = options.delay;
    out.omega1 = synth.control;
    out.omega2 = synth.control;
    std::reverse(out.omega2.omega.begin(), out.omega2.omega.end());
    out.truncated = synth.truncated;
    out.tail_truncation = synth.tail_norm;
    out.symmetric_target = target.time_symmetric();
    out.self_consistency = self_consistency_error(synth, target, p, start1);

    const SystemMatrices m = make_system_matrices(p);
    const double s2k = std::sqrt(2.0 * p.kappa);
    const TimeGrid& grid = out.grid;
    const std::span<const double> om1(out.omega1.omega);
    const std::span<const double> om2(out.omega2.omega);

    // y = (rho_1, rho_2, integral |beta_out,2|^2, norm lost to gamma)
    using Joint = Eigen::Matrix<cplx, 8, 1>;
    auto rhs = [&](double t, const Joint& y) -> Joint {
        const Vec3 r1 = y.segment<3>(0);
        const Vec3 r2 = y.segment<3>(3);
        Joint d;
        d.segment<3>(0) = m.generator(interpolate(om1, grid, t)) * r1;
        d.segment<3>(3) = m.generator(interpolate(om2, grid, t)) * r2 + m.X * r1;
        const cplx link = s2k * r1(0);
        const cplx leaving = s2k * r2(0) - link;
        d(6) = std::norm(leaving);
        d(7) = p.gamma * (std::norm(r1(2)) + std::norm(r2(2)));
        return d;
    };

    Joint y = Joint::Zero();
    y.segment<3>(0) = start1.vec();
    const double total = start1.norm2();

    out.node1.reserve(grid.size());
    out.node2.reserve(grid.size());
    out.link.grid = grid;
    out.output2.grid = grid;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Vec3 r1 = y.segment<3>(0);
        const Vec3 r2 = y.segment<3>(3);
        out.node1.push_back(NodeState::from(r1));
        out.node2.push_back(NodeState::from(r2));
        const cplx link = s2k * r1(0);
        out.link.values.push_back(link);
        out.output2.values.push_back(s2k * r2(0) - link);
        const double budget = r1.squaredNorm() + r2.squaredNorm() + y(6).real() + y(7).real();
        out.conservation_defect = std::max(out.conservation_defect, std::abs(budget - total));
        if (i + 1 < grid.size()) y = rk4_step(rhs, grid.time(i), y, grid.dt);
    }
    out.fidelity = std::norm(out.node2.back().phi12);
    out.residual_flux = y(6).real();
    out.residual_node1 = out.node1.back().norm2();
    out.lost_norm = y(7).real();
    return out;
}

}  // namespace recqed::dynamics
