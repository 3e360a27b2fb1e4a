#include "recqed/pulse.hpp"

#include <algorithm>
#include <cmath>

#include "recqed/error.hpp"

namespace recqed {

TimeGrid covering_grid(double start, double end, double max_dt) {
    if (!(end > start) || !(max_dt > 0)) {
        throw ValidationError("time grid needs end > start and a positive step");
    }
    const auto steps = static_cast<std::size_t>(std::ceil((end - start) / max_dt - 1e-9));
    return {start, (end - start) / static_cast<double>(steps), steps};
}

TimeGrid grid_from_samples(std::span<const double> times) {
    if (times.size() < 2) throw ValidationError("time grid needs at least two samples");
    const std::size_t steps = times.size() - 1;
    const double dt = (times.back() - times.front()) / static_cast<double>(steps);
    if (!(dt > 0)) throw ValidationError("time grid must be increasing");
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double expect = times.front() + static_cast<double>(i) * dt;
        if (std::abs(times[i] - expect) > 1e-9 * dt * static_cast<double>(std::max<std::size_t>(i, 1))) {
            throw ValidationError("non-uniform time grid at sample " + std::to_string(i));
        }
    }
    return {times.front(), dt, steps};
}

double PulseSpec::photon_number() const {
    if (values.size() < 2) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double w = (i == 0 || i + 1 == values.size()) ? 0.5 : 1.0;
        sum += w * std::norm(values[i]);
    }
    return sum * grid.dt;
}

double l2_distance(const PulseSpec& a, const PulseSpec& b) {
    if (!(a.grid == b.grid) || a.values.size() != b.values.size()) {
        throw ValidationError("l2_distance: pulses live on different grids");
    }
    PulseSpec diff{a.grid, std::vector<cplx>(a.values.size())};
    for (std::size_t i = 0; i < a.values.size(); ++i) diff.values[i] = a.values[i] - b.values[i];
    return std::sqrt(diff.photon_number());
}

template <typename T>
T interpolate(std::span<const T> s, const TimeGrid& grid, double t) {
    const std::size_t n = s.size();
    if (n == 0) return T{};
    if (n == 1) return s[0];
    const double x = (t - grid.start) / grid.dt;
    if (x <= 0) return s[0];
    if (x >= static_cast<double>(n - 1)) return s[n - 1];
    const auto i = std::min(static_cast<std::size_t>(x), n - 2);
    const double u = x - static_cast<double>(i);
    if (u == 0.0) return s[i];
    const T p0 = s[i == 0 ? 0 : i - 1];
    const T p1 = s[i];
    const T p2 = s[i + 1];
    const T p3 = s[std::min(i + 2, n - 1)];
    return 0.5 * ((2.0 * p1) + (p2 - p0) * u + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * (u * u) +
                  (3.0 * p1 - p0 - 3.0 * p2 + p3) * (u * u * u));
}

template double interpolate<double>(std::span<const double>, const TimeGrid&, double);
template cplx interpolate<cplx>(std::span<const cplx>, const TimeGrid&, double);

}  // namespace recqed
