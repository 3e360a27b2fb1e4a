#include "recqed/wgm_design.hpp"

#include <cmath>
#include <sstream>

#include "recqed/constants.hpp"
#include "recqed/coupling.hpp"
#include "recqed/error.hpp"
#include "recqed/format.hpp"

namespace recqed::wgm {

namespace cst = constants;

long azimuthal_order(double radius, double n, double wavelength_vac) {
    if (!(radius > 0) || !(n >= 1.0) || !(wavelength_vac > 0)) {
        throw ValidationError("resonator requires radius > 0, n >= 1, wavelength > 0");
    }
    return std::lround(2.0 * cst::pi * radius * n / wavelength_vac);
}

double fundamental_mode_volume(double radius, double n, double wavelength_vac) {
    const long ell = azimuthal_order(radius, n, wavelength_vac);
    if (ell < 1) throw ValidationError("resonator below fundamental-mode cutoff");
    const double reduced = wavelength_vac / (2.0 * cst::pi * n);
    // m = ell, so the sqrt(ell - m + 1) factor is one.
    return kModeVolumePrefactor * std::pow(cst::pi, 1.5) * reduced * reduced * reduced *
           std::pow(static_cast<double>(ell), 11.0 / 6.0);
}

double mode_volume(const ResonatorSpec& spec) {
    if (spec.mode_volume_override) {
        if (!(*spec.mode_volume_override > 0)) {
            throw ValidationError("mode_volume_override must be positive");
        }
        return *spec.mode_volume_override;
    }
    return fundamental_mode_volume(spec.radius, spec.n, spec.wavelength_vac);
}

ResonatorSpec resolve_mode_volume(const ResonatorSpec& spec) {
    ResonatorSpec out = spec;
    out.mode_volume_override = mode_volume(spec);
    return out;
}

const char* to_string(Target t) { return t == Target::N0_pop ? "N0_pop" : "N0_ph"; }

double required_q(const IonTransition& t, Target target, double radius) {
    const double V = fundamental_mode_volume(radius, t.host_index, t.wavelength_vac);
    const double beta = beta_parameter(V, t.host_index, t.wavelength_vac);
    const double T = target == Target::N0_pop ? t.T1 : t.T2 / 2.0;
    return beta * (spontaneous_time(t) / T) * local_field_factor(t.host_index);
}

std::vector<CurvePoint> radius_q_curve(const IonTransition& t, Target target,
                                       std::span<const double> radii) {
    validate(t);
    std::vector<CurvePoint> out;
    out.reserve(radii.size());
    for (const double r : radii) {
        CurvePoint p;
        p.radius = r;
        try {
            p.ell = azimuthal_order(r, t.host_index, t.wavelength_vac);
            p.mode_volume = fundamental_mode_volume(r, t.host_index, t.wavelength_vac);
            p.Q_required = required_q(t, target, r);
        } catch (const ValidationError& e) {
            p.Q_required.reset();
            p.mode_volume = std::nan("");
            p.error = e.what();
        }
        out.push_back(std::move(p));
    }
    return out;
}

std::string curve_csv(std::span<const CurvePoint> curve) {
    std::ostringstream os;
    os << "radius_m,Q_required,ell,mode_volume_m3\n";
    for (const CurvePoint& p : curve) {
        os << format_double(p.radius) << ','
           << (p.Q_required ? format_double(*p.Q_required) : std::string("nan")) << ','
           << p.ell << ',' << format_double(p.mode_volume) << '\n';
    }
    return os.str();
}

std::vector<double> make_grid(double lo, double hi, std::size_t n, bool log_spacing) {
    if (n == 0) return {};
    if (n == 1) return {lo};
    if (log_spacing && !(lo > 0 && hi > 0)) {
        throw ValidationError("logarithmic grid needs positive bounds");
    }
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = static_cast<double>(i) / static_cast<double>(n - 1);
        out[i] = log_spacing ? lo * std::pow(hi / lo, u) : lo + (hi - lo) * u;
    }
    out.back() = hi;
    return out;
}

}  // namespace recqed::wgm
