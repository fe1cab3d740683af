// One line per acceptance criterion; exit status is nonzero if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "padicosc/errors.hpp"
#include "padicosc/suites.hpp"

using namespace padicosc;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
    bool ok = true;
    std::string detail;
};

long uniform(std::mt19937_64& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

Rational padic_value(std::mt19937_64& rng, Prime p, long kmin, long kmax) {
    long a, b;
    do a = uniform(rng, 1, 15);
    while (a % static_cast<long>(p) == 0);
    do b = uniform(rng, 1, 15);
    while (b % static_cast<long>(p) == 0);
    if (uniform(rng, 0, 1)) a = -a;
    return Rational(a, b) * pow(Rational(static_cast<long>(p)), uniform(rng, kmin, kmax));
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// 1. closed form vs coset sum, >= 500 cases, max deviation < 1e-9, < 60 s
Verdict criterion_gauss() {
    auto t0 = Clock::now();
    std::mt19937_64 rng(101);
    const Prime primes[] = {2, 3, 5, 7};
    int cases = 0;
    double worst = 0;
    while (cases < 500) {
        GaussIntegralSpec s{primes[uniform(rng, 0, 3)], {}, {}, uniform(rng, -2, 2)};
        s.alpha = padic_value(rng, s.p, -3, 3);
        s.beta = padic_value(rng, s.p, -3, 3);
        if (gauss_branch(s) == GaussBranch::indeterminate) continue;
        worst = std::max(worst, std::abs(gauss_closed_form(s).value - gauss_brute_force(s, gauss_min_depth(s))));
        ++cases;
    }
    double secs = seconds_since(t0);
    return {worst < 1e-9 && secs < 60.0,
            std::to_string(cases) + " cases, max |closed - brute| = " + fmt(worst) + " (< 1e-9), " + fmt(secs) +
                " s (< 60 s)"};
}

// 2. lambda_p identities
Verdict criterion_lambda() {
    bool ok = true;
    for (Prime p : {2ul, 3ul, 5ul, 7ul}) ok = ok && lambda_p(Rational(0), p) == Complex(1, 0);
    std::mt19937_64 rng(202);
    double unit = 0, square = 0, four = 0;
    int pairs = 0;
    for (Prime p : {3ul, 5ul, 7ul})
        for (int i = 0; i < 200; ++i) {
            Rational a = padic_value(rng, p, -3, 3), b = padic_value(rng, p, -3, 3);
            if (a + b == Rational(0)) b *= Rational(2);
            Rational s = Rational(uniform(rng, 1, 30), uniform(rng, 1, 30));
            Complex la = lambda_p(a, p), lb = lambda_p(b, p);
            unit = std::max({unit, std::abs(std::abs(la) - 1.0), std::abs(std::abs(lb) - 1.0)});
            square = std::max(square, std::abs(lambda_p_direct(s * s * a, p) - lambda_p_direct(a, p)));
            four = std::max(four, std::abs(la * lb - lambda_p(a + b, p) * lambda_p(inverse(a) + inverse(b), p)));
            ++pairs;
        }
    // lambda_3(1/3) = |2/3|^{1/2} * (1/9) sum_{j<9} chi_3(j^2/3), a plain mod-9 sum
    Complex sum{0, 0};
    for (int j = 0; j < 9; ++j) sum += std::polar(1.0, 2 * std::numbers::pi * ((j * j) % 3) / 3.0);
    Complex oracle = std::sqrt(3.0) * sum / 9.0;
    double specific = std::max(std::abs(lambda_p(Rational(1, 3), 3) - Complex(0, 1)), std::abs(oracle - Complex(0, 1)));
    ok = ok && unit < 1e-12 && square < 1e-10 && four < 1e-10 && specific < 1e-10;
    return {ok, "lambda(0) = 1 exact, " + std::to_string(pairs) + " pairs: ||lambda|-1| " + fmt(unit) +
                    " (< 1e-12), square " + fmt(square) + ", four-term " + fmt(four) + " (< 1e-10), |lambda_3(1/3) - i| " +
                    fmt(specific)};
}

bool residuals_zero(const OscillatorModel& m) {
    auto ap = solve_amplitude_phase(m, 24);
    auto r1 = amplitude_residual(m, ap);
    auto r2 = phase_residual(ap);
    if (r1.order() < 22) return false;
    for (int n = 0; n <= 22; ++n)
        if (!r1[n].is_zero() || !r2[n].is_zero()) return false;
    return true;
}

// 3. exact residuals and Example 1 closed forms at N = 24
Verdict criterion_classical() {
    int models = 0;
    bool ok = true;
    for (long a : {1L, 2L, 3L})
        for (long b : {1L, 2L, 3L}) {
            auto m = preset_example1(a, b);
            ok = ok && residuals_zero(m);
            auto ap = solve_amplitude_phase(m, 24);
            Rational ra(a), rb(b);
            for (int n = 0; n <= 24; ++n) {
                Rational g = n == 0 ? rb : n == 1 ? ra * rb : Rational(0);
                Rational gam = n == 0 ? Rational(0) : pow(-ra, n - 1) / (rb * rb);
                ok = ok && ap.G[n] == g && ap.gamma[n] == gam;
            }
            ++models;
        }
    for (long a : {2L, 4L})
        for (long b : {2L, 4L}) {
            ok = ok && residuals_zero(preset_example2(a, b));
            ++models;
        }
    return {ok, std::to_string(models) +
                    " models: residuals identically zero through order 22, Example 1 coefficients match b(1+at) and "
                    "t/(b^2(1+at))"};
}

// 4. quadratic vs boundary action, exact
Verdict criterion_action() {
    std::mt19937_64 rng(404);
    int configs = 0;
    bool ok = true;
    for (const char* name : {"example1(1,1)", "example1(2,3)", "example2(2,2)", "example2(4,2)", "constant(1)", "free"}) {
        auto m = parse_preset(name);
        auto ap = solve_amplitude_phase(m, 24);
        for (int i = 0; i < 100; ++i) {
            Rational t1(uniform(rng, -25, 25), 200), t2(uniform(rng, -25, 25), 200);
            if (t1 == t2) t2 += Rational(1, 400);
            Rational x1(uniform(rng, -40, 40), uniform(rng, 1, 9)), x2(uniform(rng, -40, 40), uniform(rng, 1, 9));
            auto ep = make_endpoints(ap, x1, t1, x2, t2);
            certify_endpoints(ap, ep, {0});
            Trajectory tr(ap, ep, m.mass);
            ok = ok && classical_action(ep, m.mass, ap.C) == classical_action_boundary(tr, m.mass);
            Rational lhs = ep.G_dprime * ep.gammadot_dprime / ep.G_prime + ep.G_prime * ep.gammadot_prime / ep.G_dprime;
            ok = ok && lhs * lhs == Rational(4) * ep.gammadot_dprime * ep.gammadot_prime;
            ++configs;
        }
    }
    return {ok, std::to_string(configs) + " endpoint configurations over 6 presets: boundary form == quadratic form and "
                                          "(G''g''/G' + G'g'/G'')^2 == 4 g'' g' as exact rationals"};
}

// 5. propagator structure and composition
Verdict criterion_propagator() {
    bool ok = true;
    std::mt19937_64 rng(505);
    double spread = 0;
    std::vector<QuadraticKernel> kernels = {QuadraticKernel::free_particle(0, Rational(3, 4)),
                                            QuadraticKernel::free_particle(5, Rational(2, 5)),
                                            build_kernel(3, preset_constant(Rational(3)), Rational(0), Rational(1)),
                                            build_kernel(5, preset_example1(1, 1), Rational(5), Rational(15)),
                                            build_kernel(0, preset_example2(2, 2), Rational(0), Rational(1, 8))};
    for (const auto& k : kernels) {
        double m0 = std::abs(evaluate_kernel(k, Rational(0), Rational(0)).value());
        for (int i = 0; i < 100; ++i) {
            Prime p = k.place == 0 ? 3 : k.place;
            Rational x2 = padic_value(rng, p, -2, 2), x1 = padic_value(rng, p, -2, 2);
            spread = std::max(spread, std::abs(std::abs(evaluate_kernel(k, x2, x1).value()) - m0));
        }
    }
    ok = ok && spread < 1e-12;

    bool reduction = true;
    for (Prime place : {0ul, 3ul, 5ul, 7ul}) {
        Rational w0 = place == 0 ? Rational(5, 4) : Rational(static_cast<long>(place));
        auto k = build_kernel(place, preset_constant(w0), Rational(1, 3), Rational(4, 3));
        auto ref = QuadraticKernel::constant_frequency(place, w0, Rational(1));
        reduction = reduction && k.A == ref.A && k.B == ref.B && k.D == ref.D;
    }
    ok = ok && reduction;

    double worst = 0, slowest = 0;
    for (Prime p : {3ul, 5ul}) {
        auto t0 = Clock::now();
        auto half = QuadraticKernel::free_particle(p, Rational(1, 2));
        auto free = compose_oracle(half, half, QuadraticKernel::free_particle(p, Rational(1)), default_samples(p, -2, 2));
        slowest = std::max(slowest, seconds_since(t0));
        t0 = Clock::now();
        auto m = preset_constant(Rational(static_cast<long>(p)));
        auto small = compose_oracle(build_kernel(p, m, Rational(1, 2), Rational(1)), build_kernel(p, m, Rational(0), Rational(1, 2)),
                                    build_kernel(p, m, Rational(0), Rational(1)), default_samples(p, -2, 2));
        slowest = std::max(slowest, seconds_since(t0));
        worst = std::max({worst, free.max_deviation, small.max_deviation});
    }
    ok = ok && worst < 1e-9 && slowest < 120.0;
    return {ok, "| |K| - |K(0,0)| | max " + fmt(spread) + " (< 1e-12), constant-w kernel == closed form: " +
                    (reduction ? "exact" : "MISMATCH") + ", composition max deviation " + fmt(worst) +
                    " (< 1e-9), slowest case " + fmt(slowest) + " s (< 120 s)"};
}

// 6. Omega vacuum
Verdict criterion_vacuum() {
    bool ok = true;
    std::string detail;
    for (Prime p : {3ul, 5ul, 7ul}) {
        auto m = preset_constant(Rational(static_cast<long>(p)));  // |w0 T|_p = 1/p with T = 1
        auto cf = vacuum_check(p, m, Rational(0), Rational(1), Rational(1), VacuumMethod::closed_form);
        auto bf = vacuum_check(p, m, Rational(0), Rational(1), Rational(1), VacuumMethod::brute_force);
        ok = ok && cf.holds && bf.holds;
    }
    auto m3 = preset_constant(Rational(3));
    auto bad_cf = vacuum_check(3, m3, Rational(0), Rational(1), Rational(1, 3), VacuumMethod::closed_form);
    auto bad_bf = vacuum_check(3, m3, Rational(0), Rational(1), Rational(1, 3), VacuumMethod::brute_force);
    ok = ok && !bad_cf.holds && !bad_bf.holds && bad_cf.witness && bad_bf.witness;
    int compared = 0, disagreements = 0;
    for (Prime p : {3ul, 5ul, 7ul})
        for (const char* h : {"1", "1/3", "1/5", "1/7", "3", "5", "7", "2"})
            for (int variant = 0; variant < 2; ++variant) {
                Rational P(static_cast<long>(p));
                auto m = variant == 0 ? preset_constant(P) : preset_constant(Rational(1));
                Rational T = variant == 0 ? Rational(1) : P;
                auto a = vacuum_check(p, m, Rational(0), T, Rational::parse(h), VacuumMethod::closed_form);
                auto b = vacuum_check(p, m, Rational(0), T, Rational::parse(h), VacuumMethod::brute_force);
                disagreements += a.holds != b.holds;
                ++compared;
            }
    ok = ok && disagreements == 0;
    return {ok, "holds at p = 3, 5, 7 by both methods; h = 1/3 at p = 3 fails with witness x'' = " +
                    (bad_cf.witness ? bad_cf.witness->to_string() : std::string("none")) + "; " +
                    std::to_string(disagreements) + " verdict disagreements over " + std::to_string(compared) +
                    " configurations"};
}

// 7. discreteness and exact reduction
Verdict criterion_discreteness() {
    bool ok = true;
    int points = 0;
    const auto primes = primes_up_to(100);
    AdelicState state;
    for (long d : {1L, 2L, 3L, 5L})
        for (long k = -20; k <= 20; ++k) {
            Rational x(k, d);
            int direct = 1;
            for (Prime p : primes) direct *= omega_at(x, p);
            ok = ok && direct == (x.is_integer() ? 1 : 0) && omega_product(x, 100).value == direct;
            auto row = discreteness_profile(state, {x}, 100).rows.at(0);
            ok = ok && row.value == (x.is_integer() ? state.real.density(x) : 0.0);
            ++points;
        }
    auto marginal = probability_reduction(state, 100);
    bool exact = marginal.finite_weight == Rational(1);
    for (long k = -10; k <= 10; ++k) exact = exact && marginal.real.density(Rational(k, 3)) == state.real.density(Rational(k, 3));
    ok = ok && exact;
    return {ok, std::to_string(points) + " points k/d: prod_{p<=100} Omega = 1 exactly on integers; reduction weight " +
                    marginal.finite_weight.to_string() + ", |psi_inf|^2 unchanged"};
}

// 8. two runs of the full suite with seed 7 give identical reports
Verdict criterion_determinism() {
    SuiteOptions o;
    o.seed = 7;
    std::string a = dump(envelope("suite", suite_json(run_suite("all", o), o)));
    std::string b = dump(envelope("suite", suite_json(run_suite("all", o), o)));
    return {a == b, "suite all --seed 7 twice: " + std::to_string(a.size()) + " bytes, " +
                        (a == b ? "byte-identical" : "DIFFERENT")};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Verdict()> run;
    };
    const Criterion criteria[] = {
        {"gauss-oracle equivalence", criterion_gauss},      {"lambda_p properties", criterion_lambda},
        {"classical exactness", criterion_classical},       {"action equality", criterion_action},
        {"propagator structure", criterion_propagator},     {"vacuum condition", criterion_vacuum},
        {"discreteness", criterion_discreteness},           {"determinism", criterion_determinism},
    };
    int failures = 0, index = 0;
    for (const auto& c : criteria) {
        ++index;
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failures += !v.ok;
        std::printf("[%s] %d %s: %s\n", v.ok ? "PASS" : "FAIL", index, c.name, v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%d acceptance criteria passed\n", index - failures, index);
    return failures == 0 ? 0 : 1;
}
