#include <cmath>
#include <random>

#include "doctest.h"
#include "padicosc/classical.hpp"
#include "padicosc/errors.hpp"

using namespace padicosc;

namespace {

Rational q(const char* s) { return Rational::parse(s); }

// binom(1/2, n) by the product formula
Rational half_binomial(int n) {
    Rational out(1);
    for (int k = 0; k < n; ++k) out *= (Rational(1, 2) - Rational(k)) / Rational(k + 1);
    return out;
}

Rational random_point(std::mt19937_64& rng, long scale) {
    std::uniform_int_distribution<long> num(-40, 40), den(1, 30);
    Rational r(num(rng), den(rng));
    return r * Rational(scale);
}

}  // namespace

TEST_CASE("presets and frequency profiles") {
    auto m = parse_preset("example1(1,1)");
    CHECK(m.G0 == Rational(1));
    CHECK(m.Gdot0 == Rational(1));
    auto w = m.profile.omega_squared(6);
    // (1+t)^-4 = sum (-1)^n binom(n+3,3) t^n
    CHECK(w[1] == Rational(-4));
    CHECK(w[2] == Rational(10));
    CHECK(parse_preset("constant(3/2)").C == q("3/2"));
    CHECK(parse_preset("free").profile.omega_squared(4)[0] == Rational(0));
    CHECK_THROWS(parse_preset("example2(1,2)"));
    CHECK_THROWS(parse_preset("bogus(1)"));
    CHECK_THROWS(parse_preset("constant(0)"));
    auto poly = FrequencyProfile::from_omega_coefficients({Rational(1), Rational(2)});
    CHECK(poly.numerator == std::vector<Rational>{Rational(1), Rational(4), Rational(4)});
}

TEST_CASE("Example 1 amplitude and phase in closed form") {
    for (long a : {1L, 2L, 3L})
        for (long b : {1L, 2L, 5L}) {
            auto model = preset_example1(a, b);
            auto ap = solve_amplitude_phase(model, 16);
            CHECK(ap.G[0] == Rational(b));
            CHECK(ap.G[1] == Rational(a * b));
            for (int n = 2; n <= 16; ++n) CHECK(ap.G[n] == Rational(0));
            CHECK(ap.gamma[0] == Rational(0));
            for (int n = 1; n <= 16; ++n) CHECK(ap.gamma[n] == pow(Rational(-a), n - 1) / Rational(b * b));
        }
}

TEST_CASE("Example 2 amplitude and phase in closed form") {
    for (long a : {2L, 4L})
        for (long b : {2L, 4L}) {
            auto ap = solve_amplitude_phase(preset_example2(a, b), 14);
            for (int n = 0; n <= 14; ++n) CHECK(ap.G[n] == Rational(b) * half_binomial(n) * pow(Rational(a), n));
            for (int n = 1; n <= 14; ++n)
                CHECK(ap.gamma[n] == Rational(n % 2 == 1 ? 1 : -1) * pow(Rational(a), n - 1) / Rational(n * b * b));
        }
}

TEST_CASE("free and constant-frequency solutions") {
    auto ap = solve_amplitude_phase(preset_free(), 20);
    auto G2 = ap.G * ap.G;
    CHECK(G2[0] == Rational(1));
    CHECK(G2[2] == Rational(1));
    for (int n : {1, 3, 4, 5, 10, 20}) CHECK(G2[n] == Rational(0));
    // arctan t
    for (int n = 0; n <= 20; ++n)
        CHECK(ap.gamma[n] == (n % 2 == 0 ? Rational(0) : Rational(n % 4 == 1 ? 1 : -1, n)));

    auto c = solve_amplitude_phase(preset_constant(q("3/2")), 12);
    CHECK(c.G[0] == Rational(1));
    for (int n = 1; n <= 12; ++n) CHECK(c.G[n] == Rational(0));
    CHECK(c.gamma[1] == q("3/2"));
    for (int n = 2; n <= 12; ++n) CHECK(c.gamma[n] == Rational(0));
}

TEST_CASE("property: amplitude and phase residuals vanish") {
    std::vector<OscillatorModel> models = {preset_example1(1, 1), preset_example1(2, 3), preset_example2(2, 2),
                                           preset_free(), preset_constant(q("5/3"))};
    OscillatorModel custom;
    custom.profile = FrequencyProfile::from_omega_coefficients({Rational(1), q("1/2"), q("-1/3")});
    custom.G0 = q("3/2");
    custom.Gdot0 = q("-1/5");
    custom.C = q("7/4");
    models.push_back(custom);
    for (const auto& m : models) {
        auto ap = solve_amplitude_phase(m, 18);
        auto r1 = amplitude_residual(m, ap);
        auto r2 = phase_residual(ap);
        for (int n = 0; n <= r1.order(); ++n) CHECK(r1[n] == Rational(0));
        for (int n = 0; n <= r2.order(); ++n) CHECK(r2[n] == Rational(0));
    }
    CHECK_THROWS(solve_amplitude_phase(preset_free(), 1));
}

TEST_CASE("trajectory interpolates and solves the equation of motion") {
    std::mt19937_64 rng(314);
    for (const char* name : {"example1(1,1)", "example2(2,2)", "constant(2)", "free"}) {
        auto model = parse_preset(name);
        auto ap = solve_amplitude_phase(model, 20);
        for (int it = 0; it < 10; ++it) {
            Rational t1 = random_point(rng, 1) / Rational(200), t2 = random_point(rng, 1) / Rational(200);
            if (t1 == t2) continue;
            Rational x1 = random_point(rng, 1), x2 = random_point(rng, 1);
            auto ep = make_endpoints(ap, x1, t1, x2, t2);
            Trajectory tr(ap, ep, model.mass);
            CHECK(tr.position(t1) == x1);
            CHECK(tr.position(t2) == x2);
            auto res = motion_residual(model, tr.series());
            for (int n = 0; n <= res.order(); ++n) CHECK(res[n] == Rational(0));
            auto ks = tr.momentum_series();
            auto xd = tr.series().derivative() * model.mass;
            CHECK(ks == xd);
            // endpoint form agrees with the series inside the real radius
            Rational mid = (t1 + t2) / Rational(2);
            CHECK(tr.series().evaluate(mid).to_double() == doctest::Approx(tr.position(mid).to_double()).epsilon(1e-9));
        }
    }
}

TEST_CASE("constant frequency reduces to the textbook trajectory") {
    Rational w(2), x1(1), x2(3), t1(0), t2 = q("1/2");
    auto ap = solve_amplitude_phase(preset_constant(w), 20);
    Trajectory tr(ap, make_endpoints(ap, x1, t1, x2, t2), Rational(1));
    for (const char* ts : {"1/10", "1/4", "3/10"}) {
        double t = q(ts).to_double();
        double expect = (1.0 * std::sin(2 * (0.5 - t)) + 3.0 * std::sin(2 * t)) / std::sin(1.0);
        CHECK(tr.position(q(ts)).to_double() == doctest::Approx(expect).epsilon(1e-14));
    }
}

TEST_CASE("free-particle momentum is constant") {
    auto ap = solve_amplitude_phase(preset_free(), 24);
    Rational x1(1), x2(2), t1(0), t2 = q("1/4");
    Trajectory tr(ap, make_endpoints(ap, x1, t1, x2, t2), Rational(3));
    double k = 3.0 * (2 - 1) / 0.25;
    for (const char* ts : {"0", "1/8", "1/4"}) CHECK(tr.momentum(q(ts)).to_double() == doctest::Approx(k).epsilon(1e-12));
}

TEST_CASE("evolution matrix: identity, Liouville, round trip") {
    std::mt19937_64 rng(99);
    for (const char* name : {"example1(1,1)", "example2(2,2)", "constant(3)", "free"}) {
        auto model = parse_preset(name);
        auto ap = solve_amplitude_phase(model, 24);
        auto I = evolution_matrix(ap, Rational(2), q("1/10"), q("1/10"));
        CHECK(I == std::array<Rational, 4>{Rational(1), Rational(0), Rational(0), Rational(1)});
        for (int it = 0; it < 8; ++it) {
            Rational t0 = random_point(rng, 1) / Rational(400), t = random_point(rng, 1) / Rational(400);
            if (t == t0) continue;
            auto M = evolution_matrix(ap, Rational(2), t0, t);
            Rational det = M[0] * M[3] - M[1] * M[2];
            auto tr = trig_at(ap.gamma.evaluate(t) - ap.gamma.evaluate(t0), kDefaultOrder);
            CHECK(det == tr.sin * tr.sin + tr.cos * tr.cos);
            CHECK(std::abs(det.to_double() - 1.0) < 1e-15);

            Rational x0 = random_point(rng, 1), k0 = random_point(rng, 1);
            auto end = evolve_initial(ap, Rational(2), x0, k0, t0, t);
            Trajectory traj(ap, make_endpoints(ap, x0, t0, end.x, t), Rational(2));
            CHECK(traj.momentum(t0).to_double() == doctest::Approx(k0.to_double()).epsilon(1e-12));
            CHECK(traj.momentum(t).to_double() == doctest::Approx(end.k.to_double()).epsilon(1e-12));
        }
    }
}

TEST_CASE("action: quadratic form equals boundary form exactly") {
    std::mt19937_64 rng(2718);
    for (const char* name : {"example1(1,1)", "example1(2,1)", "example2(2,2)", "constant(1)", "free"}) {
        auto model = parse_preset(name);
        auto ap = solve_amplitude_phase(model, 20);
        for (int it = 0; it < 25; ++it) {
            Rational t1 = random_point(rng, 1) / Rational(300), t2 = random_point(rng, 1) / Rational(300);
            if (t1 == t2) continue;
            Rational x1 = random_point(rng, 1), x2 = random_point(rng, 1);
            auto ep = make_endpoints(ap, x1, t1, x2, t2);
            Trajectory tr(ap, ep, model.mass);
            Rational s = classical_action(ep, model.mass, ap.C);
            CHECK(s == classical_action_boundary(tr, model.mass));
            // sign flip of both endpoints leaves the quadratic form unchanged
            auto k = action_coefficients(ep, model.mass, ap.C);
            CHECK(k(-x2, -x1) == s);
            Rational lhs = ep.G_dprime * ep.gammadot_dprime / ep.G_prime + ep.G_prime * ep.gammadot_prime / ep.G_dprime;
            CHECK(lhs * lhs == Rational(4) * ep.gammadot_dprime * ep.gammadot_prime);
            CHECK(k.B == -model.mass * ap.C / (ep.G_prime * ep.G_dprime * ep.trig_delta.sin));
        }
        auto ep0 = make_endpoints(ap, Rational(0), Rational(0), Rational(0), q("1/7"));
        CHECK(classical_action(ep0, model.mass, ap.C) == Rational(0));
    }
}

TEST_CASE("caustics and certificates") {
    auto ap = solve_amplitude_phase(preset_example1(1, 1), 24);
    CHECK_THROWS_AS(make_endpoints(ap, Rational(1), q("1/3"), Rational(2), q("1/3")), CausticError);
    // G = 1 + t vanishes at t = -1
    CHECK_THROWS_AS(make_endpoints(ap, Rational(1), Rational(-1), Rational(2), Rational(5)), CausticError);
    // |t|_5 < |2b^2|_5 = 1 certifies t = 5 and refuses t = 1/5
    auto ok = make_endpoints(ap, Rational(1), Rational(0), Rational(2), Rational(5));
    CHECK_NOTHROW(certify_endpoints(ap, ok, {5}));
    auto bad = make_endpoints(ap, Rational(1), Rational(0), Rational(2), q("1/5"));
    CHECK_THROWS_AS(certify_endpoints(ap, bad, {5}), DivergenceError);
    auto g = convergence_certificate(ap.gamma, {5}, Rational(5));
    CHECK(g.granted(5));
    CHECK_FALSE(convergence_certificate(ap.gamma, {5}, q("1/5")).granted(5));
    CHECK(convergence_certificate(ap.G, {5}, q("1/5")).polynomial);
}
