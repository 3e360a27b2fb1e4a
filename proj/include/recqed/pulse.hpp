#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace recqed {

using cplx = std::complex<double>;

/// Uniform sampling t_i = start + i * dt, i = 0 .. steps.
struct TimeGrid {
    double start = 0.0;
    double dt = 0.0;
    std::size_t steps = 0;

    std::size_t size() const { return steps + 1; }
    double time(std::size_t i) const { return start + static_cast<double>(i) * dt; }
    double end() const { return time(steps); }

    friend bool operator==(const TimeGrid&, const TimeGrid&) = default;
};

/// Grid covering [start, end] with the largest step not exceeding `max_dt`.
TimeGrid covering_grid(double start, double end, double max_dt);

/// Recovers the grid behind explicit sample times; throws ValidationError
/// when the spacing is not uniform to 1e-9 relative.
TimeGrid grid_from_samples(std::span<const double> times);

/// Complex flux amplitude on a uniform grid, units s^(-1/2) for photon
/// wavepackets (arbitrary for linear-response probes).
struct PulseSpec {
    TimeGrid grid;
    std::vector<cplx> values;

    /// Trapezoidal integral of |value|^2.
    double photon_number() const;
};

/// Real Rabi frequency on a uniform grid.
struct ControlField {
    TimeGrid grid;
    std::vector<double> omega;
};

/// sqrt(trapezoid integral |a - b|^2) over a shared grid.
double l2_distance(const PulseSpec& a, const PulseSpec& b);

/// Catmull-Rom cubic interpolation of uniformly sampled data. Endpoints
/// reuse the edge sample as the missing neighbour.
template <typename T>
T interpolate(std::span<const T> samples, const TimeGrid& grid, double t);

}  // namespace recqed
