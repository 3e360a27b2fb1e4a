// recqed: command-line front end for the rare-earth cavity QED toolkit.
//
//   recqed catalog --list
//   recqed figures --ion "Pr3+:Y2SiO5 3H4-1D2" --Q 1e9 --radius 0.5mm
//   recqed design --target n0pop --ion all --out curves/
//   recqed throwcatch --g 10 --kappa 2 --out tc/
//   recqed spectrum --g 1MHz --kappa 10MHz --gamma 0.01MHz --out spec/
//   recqed fid --g 1MHz --kappa 100MHz --gamma 0.01MHz --out fid/
//
// Exit codes: 0 success, 2 usage error, 3 numeric/physics error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "recqed/coupling.hpp"
#include "recqed/error.hpp"
#include "recqed/excitation_dynamics.hpp"
#include "recqed/format.hpp"
#include "recqed/ion_catalog.hpp"
#include "recqed/linear_response.hpp"
#include "recqed/units.hpp"
#include "recqed/wgm_design.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace recqed;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Options {
    std::string out_dir = ".";
    std::string catalog_path;
    bool angular = false;

    // catalog
    bool list = false;
    std::string show;
    bool dump = false;

    // figures / design
    std::vector<std::string> ions;
    std::string Q = "1e9";
    std::string radius = "0.5mm";
    std::string volume;
    std::string target = "n0pop";
    std::string rmin = "0.1mm";
    std::string rmax = "5mm";
    std::size_t points = 50;
    bool linear = false;

    // throwcatch / spectrum / fid
    std::string g = "10";
    std::string kappa = "2";
    std::string gamma = "0";
    std::string sigma;
    std::string t0;
    double half_width = dynamics::GaussianPulse::kDefaultHalfWidth;
    std::string step;
    std::string delay = "0";
    double eps_den = 1e-6;
    std::string omega_cap;
    std::string target_csv;

    bool no_atom = false;
    std::string dmin;
    std::string dmax;
    std::size_t spectrum_points = 2001;
    std::string c_max;
    std::size_t c_points = 0;

    std::string probe_width;
    std::string dt;
    std::string t_max;
};

class Run {
public:
    Run(std::string subcommand, const Options& opt) : sub_(std::move(subcommand)), opt_(opt) {
        manifest_["tool"] = "recqed";
        manifest_["version"] = "0.1.0";
        manifest_["subcommand"] = sub_;
        manifest_["parameters"] = json::object();
        manifest_["outputs"] = json::array();
    }

    json& param(const std::string& key) { return manifest_["parameters"][key]; }
    json& result(const std::string& key) { return manifest_["results"][key]; }

    void write(const std::string& name, const std::string& contents) {
        ensure_dir();
        write_file_atomic(fs::path(opt_.out_dir) / name, contents);
        manifest_["outputs"].push_back(name);
    }

    void finish() {
        ensure_dir();
        const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        std::ostringstream ts;
        ts << std::put_time(std::gmtime(&now), "%Y-%m-%dT%H:%M:%SZ");
        manifest_["created_utc"] = ts.str();
        write_file_atomic(fs::path(opt_.out_dir) / "manifest.json", manifest_.dump(2) + "\n");
    }

private:
    void ensure_dir() {
        std::error_code ec;
        fs::create_directories(opt_.out_dir, ec);
        if (ec || !fs::is_directory(opt_.out_dir)) {
            throw ValidationError("unwritable output directory '" + opt_.out_dir + "'");
        }
    }

    std::string sub_;
    const Options& opt_;
    json manifest_;
};

std::string slug(const std::string& id) {
    std::string s;
    for (const char c : id) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            s += c;
        } else if (!s.empty() && s.back() != '_') {
            s += '_';
        }
    }
    while (!s.empty() && s.back() == '_') s.pop_back();
    return s;
}

json record_json(const IonTransition& t) {
    return {{"id", t.id},
            {"wavelength_m", t.wavelength_vac},
            {"oscillator_strength", t.oscillator_strength},
            {"T1_s", t.T1},
            {"T2_s", t.T2},
            {"T2_field", t.T2_field_note},
            {"host_index", t.host_index}};
}

Catalog open_catalog(const Options& opt, Run& run) {
    const fs::path path = opt.catalog_path.empty() ? default_catalog_path() : fs::path(opt.catalog_path);
    run.param("catalog") = path.string();
    return load_catalog(path);
}

std::vector<const IonTransition*> select_ions(const Catalog& cat, const std::vector<std::string>& ids) {
    std::vector<const IonTransition*> out;
    for (const std::string& id : ids) {
        if (id == "all") {
            for (const IonTransition& t : cat) out.push_back(&t);
        } else {
            out.push_back(&get_transition(cat, id));
        }
    }
    if (out.empty()) throw ValidationError("no transition selected; use --ion ID or --ion all");
    return out;
}

// -- catalog --------------------------------------------------------------

void cmd_catalog(const Options& opt, bool write_files) {
    Run run("catalog", opt);
    const Catalog cat = open_catalog(opt, run);
    if (opt.list) {
        for (const IonTransition& t : cat) std::cout << t.id << '\n';
    }
    if (!opt.show.empty()) {
        std::cout << serialize_catalog({get_transition(cat, opt.show)});
    }
    if (opt.dump) std::cout << serialize_catalog(cat);
    if (write_files) {
        json records = json::array();
        for (const IonTransition& t : cat) records.push_back(record_json(t));
        run.write("catalog.json", records.dump(2) + "\n");
        run.finish();
    }
}

// -- figures --------------------------------------------------------------

json figures_json(const IonTransition& t, const CavityFigures& f, const ResonatorSpec& r) {
    return {{"ion", t.id},
            {"Q", r.Q},
            {"radius_m", r.radius},
            {"mode_volume_m3", f.mode_volume},
            {"mu_Cm", f.mu},
            {"T_spon_s", f.T_spon},
            {"chi_L", f.chi_L},
            {"beta", f.beta},
            {"g_rad_s", f.g},
            {"kappa_rad_s", f.kappa},
            {"gamma_rad_s", f.gamma},
            {"gamma_h_rad_s", f.gamma_h},
            {"g_Hz", f.g / kTwoPi},
            {"kappa_Hz", f.kappa / kTwoPi},
            {"gamma_Hz", f.gamma / kTwoPi},
            {"gamma_h_Hz", f.gamma_h / kTwoPi},
            {"N0_pop", f.N0_pop},
            {"N0_ph", f.N0_ph},
            {"n0", f.n0}};
}

void cmd_figures(const Options& opt) {
    Run run("figures", opt);
    const Catalog cat = open_catalog(opt, run);
    const double Q = units::parse_number(opt.Q);
    run.param("ion") = opt.ions;
    run.param("Q") = Q;
    std::optional<double> volume;
    if (!opt.volume.empty()) {
        volume = units::parse_volume(opt.volume);
        run.param("mode_volume_m3") = *volume;
    } else {
        run.param("radius_m") = units::parse_length(opt.radius);
        run.param("mode_volume_model") =
            "fundamental WGM, V = 3.4 pi^1.5 (lambda/2 pi n)^3 ell^(11/6); TE/TM factor ignored";
    }

    const auto selected = select_ions(cat, opt.ions);
    json rows = json::array();
    std::cout << std::left << std::setw(28) << "ion" << std::right;
    for (const char* h : {"mu[Cm]", "T_spon[s]", "g[rad/s]", "kappa[rad/s]", "g[Hz]",
                          "kappa[Hz]", "N0_pop", "N0_ph", "n0"}) {
        std::cout << std::setw(13) << h;
    }
    std::cout << '\n';
    for (const IonTransition* t : selected) {
        ResonatorSpec r;
        r.n = t->host_index;
        r.wavelength_vac = t->wavelength_vac;
        r.Q = Q;
        if (volume) {
            r.mode_volume_override = volume;
        } else {
            r.radius = units::parse_length(opt.radius);
            r = wgm::resolve_mode_volume(r);
        }
        const CavityFigures f = figures(*t, r);
        rows.push_back(figures_json(*t, f, r));
        std::cout << std::left << std::setw(28) << t->id << std::right << std::setprecision(4);
        for (const double v : {f.mu, f.T_spon, f.g, f.kappa, f.g / kTwoPi, f.kappa / kTwoPi,
                               f.N0_pop, f.N0_ph, f.n0}) {
            std::cout << std::setw(13) << v;
        }
        std::cout << '\n';
    }
    run.write("figures.json", rows.dump(2) + "\n");
    run.finish();
}

// -- design ---------------------------------------------------------------

void cmd_design(const Options& opt) {
    Run run("design", opt);
    const Catalog cat = open_catalog(opt, run);
    std::vector<wgm::Target> targets;
    if (opt.target == "n0pop" || opt.target == "both") targets.push_back(wgm::Target::N0_pop);
    if (opt.target == "n0ph" || opt.target == "both") targets.push_back(wgm::Target::N0_ph);
    if (targets.empty()) throw ValidationError("--target must be n0pop, n0ph or both");
    const double lo = units::parse_length(opt.rmin);
    const double hi = units::parse_length(opt.rmax);
    if (!(hi > lo) || opt.points < 2) throw ValidationError("need rmax > rmin and >= 2 points");
    const std::vector<double> radii = wgm::make_grid(lo, hi, opt.points, !opt.linear);
    run.param("target") = opt.target;
    run.param("ion") = opt.ions;
    run.param("rmin_m") = lo;
    run.param("rmax_m") = hi;
    run.param("points") = opt.points;
    run.param("spacing") = opt.linear ? "linear" : "log";
    run.param("mode_volume_model") =
        "fundamental WGM, V = 3.4 pi^1.5 (lambda/2 pi n)^3 ell^(11/6), ell rounded; TE/TM factor ignored";

    for (const IonTransition* t : select_ions(cat, opt.ions)) {
        for (const wgm::Target target : targets) {
            const auto curve = wgm::radius_q_curve(*t, target, radii);
            const std::string name = "design_" + slug(t->id) + "_" + wgm::to_string(target) + ".csv";
            run.write(name, wgm::curve_csv(curve));
            std::cout << name << '\n';
        }
    }
    run.finish();
}

// -- throwcatch -----------------------------------------------------------

std::unique_ptr<dynamics::TargetPulse> read_target_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open target pulse '" + path + "'");
    std::string line;
    std::vector<double> t;
    std::vector<cplx> v;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#' || std::isalpha(static_cast<unsigned char>(line[0]))) continue;
        std::stringstream ss(line);
        std::string a, b, c;
        std::getline(ss, a, ',');
        std::getline(ss, b, ',');
        std::getline(ss, c, ',');
        try {
            t.push_back(units::parse_number(a));
            v.emplace_back(units::parse_number(b), c.empty() ? 0.0 : units::parse_number(c));
        } catch (const ParseError& e) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    PulseSpec p{grid_from_samples(t), std::move(v)};
    return std::make_unique<dynamics::SampledPulse>(std::move(p));
}

std::string state_row(double t, int node, const dynamics::NodeState& s, double omega, cplx beta) {
    std::string row = format_double(t) + "," + std::to_string(node);
    for (const double x : {s.alpha.real(), s.alpha.imag(), s.phi12.real(), s.phi12.imag(),
                           s.phi13.real(), s.phi13.imag(), omega, beta.real(), beta.imag()}) {
        row += ',';
        row += format_double(x);
    }
    row += '\n';
    return row;
}

void cmd_throwcatch(const Options& opt) {
    Run run("throwcatch", opt);
    dynamics::NodeParams p;
    p.g = units::parse_rate(opt.g, opt.angular);
    p.kappa = units::parse_rate(opt.kappa, opt.angular);
    p.gamma = units::parse_rate(opt.gamma, opt.angular);
    run.param("g") = p.g;
    run.param("kappa") = p.kappa;
    run.param("gamma") = p.gamma;
    run.param("rate_units") = "angular (rad per time unit)";

    std::unique_ptr<dynamics::TargetPulse> target;
    if (!opt.target_csv.empty()) {
        target = read_target_csv(opt.target_csv);
        run.param("target") = {{"kind", "sampled"}, {"path", opt.target_csv},
                               {"derivatives", "central differences"}};
    } else {
        const double sigma = opt.sigma.empty() ? 10.0 / p.kappa : units::parse_time(opt.sigma);
        const double t0 = opt.t0.empty() ? opt.half_width * sigma : units::parse_time(opt.t0);
        target = std::make_unique<dynamics::GaussianPulse>(sigma, t0, opt.half_width);
        run.param("target") = {{"kind", "gaussian"}, {"sigma", sigma}, {"t0", t0},
                               {"half_width_sigma", opt.half_width}, {"photon_number", 1.0},
                               {"derivatives", "analytic"}};
    }

    dynamics::ThrowCatchOptions tco;
    tco.synthesis.step = opt.step.empty() ? 0.0 : units::parse_time(opt.step);
    tco.synthesis.eps_den = opt.eps_den;
    if (!opt.omega_cap.empty()) tco.synthesis.omega_cap = units::parse_rate(opt.omega_cap, opt.angular);
    tco.delay = units::parse_time(opt.delay);
    run.param("step_requested") = tco.synthesis.step > 0 ? json(tco.synthesis.step) : json("auto");
    run.param("max_rate_step") = dynamics::kMaxRateStep;
    run.param("eps_den") = tco.synthesis.eps_den;
    run.param("omega_cap") = tco.synthesis.omega_cap ? json(*tco.synthesis.omega_cap) : json(nullptr);
    run.param("delay") = tco.delay;
    run.param("integrator") = "classical RK4, fixed step, Catmull-Rom control interpolation";

    const dynamics::ThrowCatchResult r = dynamics::run_throw_catch(*target, p, tco);

    std::string csv = "t,node,alpha_re,alpha_im,phi12_re,phi12_im,phi13_re,phi13_im,omega,beta_re,beta_im\n";
    for (std::size_t i = 0; i < r.grid.size(); ++i) {
        csv += state_row(r.grid.time(i), 1, r.node1[i], r.omega1.omega[i], r.link.values[i]);
    }
    for (std::size_t i = 0; i < r.grid.size(); ++i) {
        csv += state_row(r.grid.time(i) + r.delay, 2, r.node2[i], r.omega2.omega[i], r.output2.values[i]);
    }
    run.write("trajectory.csv", csv);

    const json summary = {{"fidelity", r.fidelity},
                          {"residual_flux", r.residual_flux},
                          {"residual_node1", r.residual_node1},
                          {"lost_norm", r.lost_norm},
                          {"conservation_defect", r.conservation_defect},
                          {"tail_truncation", r.tail_truncation},
                          {"truncated", r.truncated},
                          {"symmetric_target", r.symmetric_target},
                          {"self_consistency_l2", r.self_consistency},
                          {"step", r.step},
                          {"parameters", {{"g", p.g}, {"kappa", p.kappa}, {"gamma", p.gamma},
                                          {"t_start", r.grid.start}, {"t_end", r.grid.end()},
                                          {"delay", r.delay}}}};
    run.write("summary.json", summary.dump(2) + "\n");
    run.result("fidelity") = r.fidelity;
    run.result("step") = r.step;
    run.finish();
    std::cout << "fidelity " << format_double(r.fidelity) << "  residual_flux "
              << format_double(r.residual_flux) << "  step " << format_double(r.step) << '\n';
    if (!r.symmetric_target) {
        std::cout << "warning: target is not time-symmetric; the time-reversed catch is approximate\n";
    }
}

// -- spectrum / fid -------------------------------------------------------

response::ResponseSystem response_system(const Options& opt, Run& run) {
    response::ResponseSystem s;
    s.g = units::parse_rate(opt.g, opt.angular);
    s.kappa = units::parse_rate(opt.kappa, opt.angular);
    s.gamma = units::parse_rate(opt.gamma, opt.angular);
    s.atom_present = !opt.no_atom;
    response::validate(s);
    run.param("g_rad_s") = s.g;
    run.param("kappa_rad_s") = s.kappa;
    run.param("gamma_rad_s") = s.gamma;
    run.param("atom_present") = s.atom_present;
    return s;
}

void cmd_spectrum(const Options& opt) {
    Run run("spectrum", opt);
    const response::ResponseSystem s = response_system(opt, run);
    const double hi = opt.dmax.empty() ? 2.0 * s.kappa : units::parse_rate(opt.dmax, opt.angular);
    const double lo = opt.dmin.empty() ? -hi : units::parse_rate(opt.dmin, opt.angular);
    if (!(hi > lo) || opt.spectrum_points < 2) throw ValidationError("need dmax > dmin and >= 2 points");
    const std::vector<double> deltas = wgm::make_grid(lo, hi, opt.spectrum_points, false);
    run.param("delta_min_rad_s") = lo;
    run.param("delta_max_rad_s") = hi;
    run.param("points") = opt.spectrum_points;
    run.param("phase_branch") = "unwrapped along the sweep, anchored in (-pi, pi] nearest delta = 0";
    run.param("probe_normalization") = "arbitrary units; linear response";
    run.write("spectrum.csv", response::spectrum_csv(response::spectrum(s, deltas)));

    if (!opt.c_max.empty()) {
        const double cmax = units::parse_number(opt.c_max);
        const std::size_t n = opt.c_points ? opt.c_points : 201;
        const std::vector<double> cs = wgm::make_grid(0.0, cmax, n, false);
        std::string csv = "C,r0_re,r0_im,phase_at_0,emission_at_0\n";
        for (const auto& c : response::cooperativity_sweep(s.kappa, s.gamma, cs)) {
            csv += format_double(c.C) + "," + format_double(c.r0.real()) + "," +
                   format_double(c.r0.imag()) + "," + format_double(c.phase_at_0) + "," +
                   format_double(c.emission_at_0) + "\n";
        }
        run.param("cooperativity_max") = cmax;
        run.param("cooperativity_points") = n;
        run.write("cooperativity.csv", csv);
    }
    run.finish();
}

void cmd_fid(const Options& opt) {
    Run run("fid", opt);
    const response::ResponseSystem s = response_system(opt, run);
    const response::FidOptions fo;
    const double dt = opt.dt.empty() ? kTwoPi / (2.0 * fo.extent_factor * s.kappa)
                                     : units::parse_time(opt.dt);
    const double width = opt.probe_width.empty() ? 2.0 / s.kappa : units::parse_time(opt.probe_width);
    const double centre = 10.0 * width;
    const TimeGrid grid = covering_grid(0.0, 20.0 * width, dt);
    const PulseSpec probe = response::gaussian_probe(grid, centre, width);
    const response::FidResult r = response::fid_signal(s, probe, fo);

    const double slow = response::slow_decay_rate(s);
    const double t_max = opt.t_max.empty() ? centre + (slow > 0 ? 10.0 / slow : 50.0 / s.kappa)
                                           : units::parse_time(opt.t_max);
    run.param("dt") = grid.dt;
    run.param("probe") = {{"shape", "gaussian"}, {"width", width}, {"center", centre}};
    run.param("probe_normalization") = "arbitrary units; linear response";
    run.param("fft_size") = r.fft_size;
    run.param("frequency_step_rad_s") = r.frequency_step;
    run.param("frequency_extent_rad_s") = r.frequency_extent;
    run.param("extent_factor") = fo.extent_factor;
    run.param("resolution_divisor") = fo.resolution_divisor;
    run.param("t_max") = t_max;
    run.write("fid.csv", response::fid_csv(r.output, t_max));
    run.result("slow_pole_rate") = slow;
    run.result("eliminated_rate") = response::eliminated_decay_rate(s);
    run.finish();
}

int fail(int code, const std::string& kind, const std::string& msg) {
    std::string flat = msg;
    for (char& c : flat) {
        if (c == '\n') c = ' ';
    }
    std::cerr << "recqed: error: " << kind << ": " << flat << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"Rare-earth cavity QED design and simulation toolkit"};
    app.require_subcommand(1);
    app.add_option("--out,-o", opt.out_dir, "Output directory")->capture_default_str();
    app.add_option("--catalog", opt.catalog_path, "Catalog file (default: $RECQED_CATALOG or bundled)");
    app.add_flag("--angular", opt.angular, "Treat Hz-suffixed rates as angular (no 2 pi factor)");

    auto* catalog = app.add_subcommand("catalog", "Inspect the transition catalog");
    catalog->add_flag("--list", opt.list, "Print transition ids");
    catalog->add_option("--show", opt.show, "Print one record");
    catalog->add_flag("--dump", opt.dump, "Print the whole catalog");

    auto* figs = app.add_subcommand("figures", "Figures of merit for transitions in a resonator");
    figs->add_option("--ion", opt.ions, "Transition id or 'all'")->required();
    figs->add_option("--Q", opt.Q, "Quality factor")->capture_default_str();
    figs->add_option("--radius", opt.radius, "Sphere radius, e.g. 0.5mm")->capture_default_str();
    figs->add_option("--volume", opt.volume, "Mode volume override, e.g. 1000um3");

    auto* design = app.add_subcommand("design", "Radius vs required Q curves");
    design->add_option("--target", opt.target, "n0pop, n0ph or both")->capture_default_str();
    design->add_option("--ion", opt.ions, "Transition id or 'all'")->required();
    design->add_option("--rmin", opt.rmin)->capture_default_str();
    design->add_option("--rmax", opt.rmax)->capture_default_str();
    design->add_option("--points", opt.points)->capture_default_str();
    design->add_flag("--linear", opt.linear, "Linear instead of logarithmic radius spacing");

    auto* tc = app.add_subcommand("throwcatch", "Two-node photon transfer with synthesised drives");
    tc->add_option("--g", opt.g, "Coupling (angular; Hz suffix means cyclic)")->capture_default_str();
    tc->add_option("--kappa", opt.kappa)->capture_default_str();
    tc->add_option("--gamma", opt.gamma)->capture_default_str();
    tc->add_option("--sigma", opt.sigma, "Gaussian width (default 10/kappa)");
    tc->add_option("--t0", opt.t0, "Gaussian centre (default half-width * sigma)");
    tc->add_option("--half-width", opt.half_width, "Truncation half-width in sigma")->capture_default_str();
    tc->add_option("--step", opt.step, "Time step (default: resolution rule)");
    tc->add_option("--delay", opt.delay, "Node-2 time-label shift")->capture_default_str();
    tc->add_option("--eps-den", opt.eps_den, "Synthesis singularity threshold on |phi12|")->capture_default_str();
    tc->add_option("--omega-cap", opt.omega_cap, "Maximum allowed |Omega|");
    tc->add_option("--target-csv", opt.target_csv, "Sampled target pulse: t,re[,im]");

    auto* spec = app.add_subcommand("spectrum", "Reflection/emission spectrum vs detuning");
    spec->add_option("--g", opt.g)->capture_default_str();
    spec->add_option("--kappa", opt.kappa)->capture_default_str();
    spec->add_option("--gamma", opt.gamma)->capture_default_str();
    spec->add_flag("--no-atom", opt.no_atom, "Empty cavity");
    spec->add_option("--dmin", opt.dmin, "Lowest detuning (default -2 kappa)");
    spec->add_option("--dmax", opt.dmax, "Highest detuning (default 2 kappa)");
    spec->add_option("--points", opt.spectrum_points)->capture_default_str();
    spec->add_option("--c-max", opt.c_max, "Also sweep cooperativity 0..C_max at zero detuning");
    spec->add_option("--c-points", opt.c_points, "Points in the cooperativity sweep (default 201)");

    auto* fid = app.add_subcommand("fid", "Free-induction-decay style response to a short probe");
    fid->add_option("--g", opt.g)->capture_default_str();
    fid->add_option("--kappa", opt.kappa)->capture_default_str();
    fid->add_option("--gamma", opt.gamma)->capture_default_str();
    fid->add_flag("--no-atom", opt.no_atom, "Empty cavity");
    fid->add_option("--probe-width", opt.probe_width, "Gaussian probe width (default 2/kappa)");
    fid->add_option("--dt", opt.dt, "Sample step (default 2 pi / (40 kappa))");
    fid->add_option("--t-max", opt.t_max, "Last time written (default centre + 10 / slow rate)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(kExitUsage, "usage", e.what());
    }

    try {
        if (*catalog) {
            const bool explicit_out = app.get_option("--out")->count() > 0;
            if (!opt.list && opt.show.empty() && !opt.dump && !explicit_out) opt.list = true;
            cmd_catalog(opt, explicit_out);
        } else if (*figs) {
            cmd_figures(opt);
        } else if (*design) {
            cmd_design(opt);
        } else if (*tc) {
            cmd_throwcatch(opt);
        } else if (*spec) {
            cmd_spectrum(opt);
        } else if (*fid) {
            cmd_fid(opt);
        }
    } catch (const NumericError& e) {
        return fail(kExitNumeric, "numeric", e.what());
    } catch (const ParseError& e) {
        return fail(kExitUsage, "parse", e.what());
    } catch (const ValidationError& e) {
        return fail(kExitUsage, "invalid", e.what());
    } catch (const Error& e) {
        return fail(kExitUsage, "io", e.what());
    } catch (const std::exception& e) {
        return fail(1, "internal", e.what());
    }
    return 0;
}
