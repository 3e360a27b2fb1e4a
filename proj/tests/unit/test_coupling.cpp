#include <doctest.h>

#include <cmath>
#include <random>

#include "recqed/coupling.hpp"
#include "recqed/error.hpp"

using namespace recqed;

namespace {

const Catalog& catalog() {
    static const Catalog cat = load_catalog(RECQED_TEST_CATALOG);
    return cat;
}

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

}  // namespace

TEST_CASE("dipole moment and radiative time against independent evaluation") {
    struct Ref {
        const char* id;
        double mu;
        double tspon;
    };
    // scipy CODATA evaluation, 5 significant figures
    const Ref refs[] = {
        {"Pr3+:Y2SiO5 3H4-1D2", 1.5932e-32, 5.6637e-3},
        {"Pr3+:YAG 3H4-1D2", 3.5294e-32, 1.1090e-3},
        {"Nd3+:YVO4 4I9/2-4F3/2", 9.1253e-32, 3.6256e-4},
        {"Er3+:Y2SiO5 4I15/2-4I13/2", 2.0711e-32, 5.4594e-2},
        {"Er3+:LiNbO3 4I15/2-4I13/2", 3.5029e-32, 9.0817e-3},
        {"Tm3+:LiNbO3 3H6-3H4", 6.3080e-32, 3.8391e-4},
        {"Tm3+:YAG 3H6-3H4", 8.2845e-33, 4.5195e-2},
        {"Eu3+:Y2SiO5 7F0-5D0", 3.2443e-33, 1.1969e-1},
    };
    for (const Ref& r : refs) {
        CAPTURE(r.id);
        const IonTransition& t = get_transition(catalog(), r.id);
        CHECK(rel_close(dipole_moment(t), r.mu, 1e-4));
        CHECK(rel_close(spontaneous_time(t), r.tspon, 1e-4));
    }
}

TEST_CASE("kappa, beta and g oracles") {
    CHECK(rel_close(cavity_kappa(1536.14e-9, 1e8), 6131119.453008362, 1e-12));
    CHECK(rel_close(cavity_kappa(605.977e-9, 1e10), 155422.69486373683, 1e-12));
    CHECK(rel_close(beta_parameter(100e-18, 1.8, 1e-6), 15349.20876457417, 1e-12));
    const IonTransition& pr = get_transition(catalog(), "Pr3+:Y2SiO5 3H4-1D2");
    CHECK(rel_close(coupling_g(pr, 1000e-18), 361107.4968441311, 1e-8));
}

TEST_CASE("scaling laws") {
    const IonTransition& t = get_transition(catalog(), "Er3+:Y2SiO5 4I15/2-4I13/2");
    const double V = 1e-15;
    CHECK(rel_close(coupling_g(t, 4.0 * V), coupling_g(t, V) / 2.0, 1e-13));
    CHECK(rel_close(cavity_kappa(1e-6, 2e8), cavity_kappa(1e-6, 1e8) / 2.0, 1e-14));
    CHECK(rel_close(beta_parameter(2.0 * V, 1.8, 1e-6), 2.0 * beta_parameter(V, 1.8, 1e-6), 1e-14));

    IonTransition stronger = t;
    stronger.oscillator_strength *= 4.0;
    CHECK(rel_close(dipole_moment(stronger), 2.0 * dipole_moment(t), 1e-13));
    CHECK(rel_close(spontaneous_time(stronger), spontaneous_time(t) / 4.0, 1e-13));
    CHECK(local_field_factor(1.0) == 1.0);
}

TEST_CASE("rate and beta forms agree for random inputs") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 300; ++i) {
        IonTransition t;
        t.id = "random";
        t.wavelength_vac = 400e-9 + 1500e-9 * u(rng);
        t.oscillator_strength = std::pow(10.0, -9.0 + 4.0 * u(rng));
        t.T1 = std::pow(10.0, -5.0 + 3.0 * u(rng));
        t.T2 = t.T1 * 2.0 * (0.01 + 0.99 * u(rng));
        t.host_index = 1.4 + u(rng);
        ResonatorSpec r;
        r.n = t.host_index;
        r.wavelength_vac = t.wavelength_vac;
        r.Q = std::pow(10.0, 6.0 + 5.0 * u(rng));
        r.mode_volume_override = std::pow(10.0, -19.0 + 6.0 * u(rng));
        const CavityFigures f = figures(t, r);
        const CriticalNumbers c = critical_numbers(transition_rates(t, f.g, f.kappa));
        CHECK(rel_close(c.N0_pop, f.N0_pop, 1e-9));
        CHECK(rel_close(c.N0_ph, f.N0_ph, 1e-9));
        CHECK(rel_close(c.n0, f.n0, 1e-9));
        CHECK(f.N0_ph >= f.N0_pop * (1.0 - 1e-12));
    }
}

TEST_CASE("critical numbers are monotone in Q and V") {
    const IonTransition& t = get_transition(catalog(), "Nd3+:YVO4 4I9/2-4F3/2");
    ResonatorSpec r;
    r.n = t.host_index;
    r.wavelength_vac = t.wavelength_vac;
    r.mode_volume_override = 1e-16;
    double prev = INFINITY;
    for (double Q = 1e5; Q < 1e11; Q *= 3.0) {
        r.Q = Q;
        const double n0 = figures(t, r).N0_pop;
        CHECK(n0 < prev);
        prev = n0;
    }
    r.Q = 1e8;
    prev = 0.0;
    for (double V = 1e-18; V < 1e-12; V *= 3.0) {
        r.mode_volume_override = V;
        const double n0 = figures(t, r).N0_pop;
        CHECK(n0 > prev);
        prev = n0;
    }
}

TEST_CASE("critical numbers from explicit rates") {
    const CriticalNumbers c = critical_numbers({2.0, 3.0, 4.0, 1.0});
    CHECK(c.N0_pop == doctest::Approx(3.0));
    CHECK(c.N0_ph == doctest::Approx(2.0 * 3.0 * 3.0 / 4.0));
    CHECK(c.n0 == doctest::Approx(4.0 * 3.0 / 16.0));
    CHECK_THROWS_AS(critical_numbers({0.0, 1.0, 1.0, 0.0}), ValidationError);
    CHECK_THROWS_AS(critical_numbers({1.0, -1.0, 1.0, 0.0}), ValidationError);
}

TEST_CASE("figures needs a mode volume") {
    const IonTransition& t = catalog().front();
    ResonatorSpec r;
    r.radius = 1e-3;
    r.Q = 1e8;
    CHECK_THROWS_AS(figures(t, r), ValidationError);
    r.mode_volume_override = 1e-15;
    r.Q = 0.0;
    CHECK_THROWS_AS(figures(t, r), ValidationError);
}
