#include "recqed/linear_response.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include "recqed/error.hpp"
#include "recqed/format.hpp"

namespace recqed::response {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};

// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwBuffer {
    explicit FftwBuffer(std::size_t n)
        : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))), size(n) {
        if (!data) throw std::bad_alloc();
    }
    ~FftwBuffer() { fftw_free(data); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;

    cplx* begin() { return reinterpret_cast<cplx*>(data); }

    fftw_complex* data;
    std::size_t size;
};

class FftwPlan {
public:
    FftwPlan(FftwBuffer& buf, int sign) {
        std::lock_guard lock(planner_mutex());
        plan_ = fftw_plan_dft_1d(static_cast<int>(buf.size), buf.data, buf.data, sign,
                                 FFTW_ESTIMATE);
        if (!plan_) throw NumericError("FFTW could not create a plan");
    }
    ~FftwPlan() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan_);
    }
    FftwPlan(const FftwPlan&) = delete;
    FftwPlan& operator=(const FftwPlan&) = delete;

    void run() const { fftw_execute(plan_); }

private:
    fftw_plan plan_;
};

double principal_arg(cplx z) {
    const double a = std::arg(z);
    return a == -kPi ? kPi : a;
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// Signed angular frequency of DFT bin k.
double bin_frequency(std::size_t k, std::size_t n, double dt) {
    const auto kk = static_cast<double>(k);
    const double signed_k = k < (n + 1) / 2 ? kk : kk - static_cast<double>(n);
    return 2.0 * kPi * signed_k / (static_cast<double>(n) * dt);
}

}  // namespace

double ResponseSystem::cooperativity() const {
    const double ge = effective_g();
    return 2.0 * ge * ge / (kappa * gamma);
}

void validate(const ResponseSystem& s) {
    if (!(s.kappa > 0) || !(s.gamma >= 0) || !(s.g >= 0) || !std::isfinite(s.kappa) ||
        !std::isfinite(s.gamma) || !std::isfinite(s.g)) {
        throw ValidationError("response system requires kappa > 0, gamma >= 0, g >= 0");
    }
}

SpectralPoint response_at(const ResponseSystem& s, double delta) {
    validate(s);
    const double g = s.effective_g();
    const cplx id = I * delta;
    SpectralPoint p;
    p.delta = delta;
    if (g == 0.0) {
        // The atomic factor cancels; this form also covers gamma = 0 at resonance.
        p.r = (id - s.kappa) / (id + s.kappa);
        p.e = 0.0;
    } else {
        const cplx D = g * g + (id + s.gamma / 2.0) * (id + s.kappa);
        if (D == cplx{}) throw NumericError("response denominator vanished");
        p.r = (g * g + (id + s.gamma / 2.0) * (id - s.kappa)) / D;
        p.e = std::sqrt(2.0) * g * std::sqrt(s.kappa * s.gamma) / D;
    }
    p.phase = principal_arg(p.r);
    p.emission_prob = std::norm(p.e);
    return p;
}

std::vector<SpectralPoint> spectrum(const ResponseSystem& s, std::span<const double> deltas) {
    std::vector<SpectralPoint> out;
    out.reserve(deltas.size());
    for (const double d : deltas) {
        if (!std::isfinite(d)) throw ValidationError("detuning grid must be finite");
        SpectralPoint p = response_at(s, d);
        if (!out.empty()) {
            const double prev = out.back().phase;
            p.phase += 2.0 * kPi * std::round((prev - p.phase) / (2.0 * kPi));
        }
        out.push_back(p);
    }
    if (!out.empty()) {
        const auto centre = std::min_element(
            out.begin(), out.end(),
            [](const SpectralPoint& a, const SpectralPoint& b) { return std::abs(a.delta) < std::abs(b.delta); });
        const double shift = centre->phase - principal_arg(centre->r);
        for (SpectralPoint& p : out) p.phase -= shift;
    }
    return out;
}

std::vector<CooperativityPoint> cooperativity_sweep(double kappa, double gamma,
                                                    std::span<const double> C_values) {
    if (!(gamma > 0)) throw ValidationError("cooperativity sweep needs gamma > 0");
    std::vector<CooperativityPoint> out;
    out.reserve(C_values.size());
    for (const double C : C_values) {
        if (!(C >= 0) || !std::isfinite(C)) throw ValidationError("cooperativity must be >= 0");
        const ResponseSystem sys{std::sqrt(C * kappa * gamma / 2.0), kappa, gamma, true};
        const SpectralPoint p = response_at(sys, 0.0);
        out.push_back({C, p.r, p.phase, p.emission_prob});
    }
    return out;
}

std::array<cplx, 2> drift_eigenvalues(const ResponseSystem& s) {
    validate(s);
    const double g = s.effective_g();
    const double half_trace = -(s.kappa + s.gamma / 2.0) / 2.0;
    const double det = s.kappa * s.gamma / 2.0 + g * g;
    const double half_split = (s.kappa - s.gamma / 2.0) / 2.0;
    const cplx root = std::sqrt(cplx(half_split * half_split - g * g));
    if (root.imag() != 0.0 || root.real() == 0.0) {
        // Complex pair (or degenerate): equal real parts.
        return {cplx(half_trace) + root, cplx(half_trace) - root};
    }
    const cplx fast = half_trace - root.real();
    // Product of the eigenvalues is det; avoids cancellation for kappa >> g.
    const cplx slow = det / fast;
    return {slow, fast};
}

double slow_decay_rate(const ResponseSystem& s) { return -drift_eigenvalues(s)[0].real(); }

double eliminated_decay_rate(const ResponseSystem& s) {
    validate(s);
    const double g = s.effective_g();
    return g * g / s.kappa + s.gamma / 2.0;
}

FidResult fid_signal(const ResponseSystem& s, const PulseSpec& probe, const FidOptions& opt) {
    validate(s);
    const TimeGrid& grid = probe.grid;
    if (probe.values.size() != grid.size() || probe.values.size() < 2 || !(grid.dt > 0)) {
        throw ValidationError("probe samples do not match a uniform grid");
    }
    const double extent = 2.0 * kPi / grid.dt;
    if (extent < opt.extent_factor * s.kappa) {
        std::ostringstream os;
        os << "probe sampling too coarse: frequency extent " << format_double(extent)
           << " rad/s < " << opt.extent_factor << " kappa; need dt <= "
           << format_double(2.0 * kPi / (opt.extent_factor * s.kappa));
        throw ValidationError(os.str());
    }

    const double g = s.effective_g();
    double finest = 0.0;
    for (const double rate : {s.gamma / 2.0, g * g / s.kappa}) {
        if (rate > 0) finest = finest > 0 ? std::min(finest, rate) : rate;
    }
    std::size_t needed = probe.values.size();
    if (finest > 0) {
        const double max_step = finest / opt.resolution_divisor;
        needed = std::max(needed, static_cast<std::size_t>(std::ceil(extent / max_step)));
    }
    const std::size_t n = next_pow2(needed);

    FftwBuffer buf(n);
    cplx* data = buf.begin();
    std::copy(probe.values.begin(), probe.values.end(), data);
    std::fill(data + probe.values.size(), data + n, cplx{});

    const FftwPlan forward(buf, FFTW_FORWARD);
    const FftwPlan backward(buf, FFTW_BACKWARD);
    forward.run();

    double total = 0.0;
    double outer = 0.0;
    double band_edge = 0.0;  // largest |omega| with appreciable probe content
    const double quarter = extent / 4.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double w = std::norm(data[k]);
        total += w;
        if (std::abs(bin_frequency(k, n, grid.dt)) > quarter) outer += w;
    }
    if (total > 0 && outer > opt.band_tolerance * total) {
        for (std::size_t k = 0; k < n; ++k) {
            if (std::norm(data[k]) > opt.band_tolerance * total / static_cast<double>(n)) {
                band_edge = std::max(band_edge, std::abs(bin_frequency(k, n, grid.dt)));
            }
        }
        std::ostringstream os;
        os << "probe bandwidth exceeds the frequency grid: required extent >= "
           << format_double(4.0 * band_edge) << " rad/s (dt <= "
           << format_double(2.0 * kPi / (4.0 * band_edge)) << "), have "
           << format_double(extent);
        throw ValidationError(os.str());
    }

    for (std::size_t k = 0; k < n; ++k) {
        data[k] *= response_at(s, bin_frequency(k, n, grid.dt)).r;
    }
    backward.run();

    FidResult out;
    out.fft_size = n;
    out.frequency_extent = extent;
    out.frequency_step = extent / static_cast<double>(n);
    out.output.grid = {grid.start, grid.dt, n - 1};
    out.output.values.assign(data, data + n);
    const double scale = 1.0 / static_cast<double>(n);
    for (cplx& v : out.output.values) v *= scale;
    return out;
}

PulseSpec gaussian_probe(const TimeGrid& grid, double center, double width) {
    if (!(width > 0)) throw ValidationError("probe width must be positive");
    PulseSpec p{grid, {}};
    p.values.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid.time(i) - center;
        p.values.emplace_back(std::exp(-x * x / (2.0 * width * width)));
    }
    return p;
}

double fit_decay_rate(const PulseSpec& signal, double t_begin, double t_end) {
    double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < signal.values.size(); ++i) {
        const double t = signal.grid.time(i);
        if (t < t_begin || t > t_end) continue;
        const double a = std::abs(signal.values[i]);
        if (!(a > 0)) continue;
        const double y = std::log(a);
        n += 1;
        sx += t;
        sy += y;
        sxx += t * t;
        sxy += t * y;
    }
    if (n < 2) throw ValidationError("decay fit window holds fewer than two samples");
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return -slope;
}

std::string spectrum_csv(std::span<const SpectralPoint> points) {
    std::ostringstream os;
    os << "delta_rad_s,r_re,r_im,phase_unwrapped,emission_prob\n";
    for (const SpectralPoint& p : points) {
        os << format_double(p.delta) << ',' << format_double(p.r.real()) << ','
           << format_double(p.r.imag()) << ',' << format_double(p.phase) << ','
           << format_double(p.emission_prob) << '\n';
    }
    return os.str();
}

std::string fid_csv(const PulseSpec& signal, double t_max) {
    std::ostringstream os;
    os << "t,out_re,out_im,abs\n";
    for (std::size_t i = 0; i < signal.values.size(); ++i) {
        const double t = signal.grid.time(i);
        if (t > t_max) break;
        const cplx v = signal.values[i];
        os << format_double(t) << ',' << format_double(v.real()) << ','
           << format_double(v.imag()) << ',' << format_double(std::abs(v)) << '\n';
    }
    return os.str();
}

}  // namespace recqed::response
