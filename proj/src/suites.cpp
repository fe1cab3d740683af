#include "padicosc/suites.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include "padicosc/errors.hpp"
#include "padicosc/parallel.hpp"

namespace padicosc {

namespace {

struct Outcome {
    bool ok = true;
    std::string message;
    double metric = 0;  // suite-specific deviation, reduced by max
};

using Case = std::function<Outcome()>;

constexpr std::size_t kMaxMessages = 20;

Outcome fail(std::string msg, double metric = 0) { return {false, std::move(msg), metric}; }

SuiteResult collect(const std::string& name, const std::vector<Case>& cases, const std::string& metric_name) {
    auto outcomes = parallel_map<Outcome>(cases.size(), [&](std::size_t i) {
        try {
            return cases[i]();
        } catch (const std::exception& e) {
            return fail(std::string("exception: ") + e.what());
        }
    });
    SuiteResult r;
    r.name = name;
    r.cases = outcomes.size();
    double worst = 0;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        worst = std::max(worst, outcomes[i].metric);
        if (outcomes[i].ok) continue;
        ++r.failures;
        if (r.messages.size() < kMaxMessages) r.messages.push_back("case " + std::to_string(i) + ": " + outcomes[i].message);
    }
    r.metrics[metric_name] = worst;
    return r;
}

std::mt19937_64 suite_rng(std::uint64_t seed, const std::string& name) {
    std::seed_seq seq(name.begin(), name.end());
    std::vector<std::uint32_t> salt(2);
    seq.generate(salt.begin(), salt.end());
    std::seed_seq mixed{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), salt[0], salt[1]};
    return std::mt19937_64(mixed);
}

long uniform(std::mt19937_64& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

Rational prime_rational(Prime p) { return Rational(static_cast<long>(p)); }

/// (a/b) with a, b in [1, 12] prime to p, random sign, times p^k.
Rational padic_draw(std::mt19937_64& rng, Prime p, long kmin, long kmax) {
    auto unit = [&] {
        long u;
        do u = uniform(rng, 1, 12);
        while (u % static_cast<long>(p) == 0);
        return u;
    };
    long a = unit(), b = unit();
    if (uniform(rng, 0, 1)) a = -a;
    return Rational(a, b) * pow(prime_rational(p), uniform(rng, kmin, kmax));
}

Rational small_rational(std::mt19937_64& rng, long num, long den) {
    return Rational(uniform(rng, -num, num), uniform(rng, 1, den));
}

int cases_or(const SuiteOptions& o, int fallback) { return o.cases > 0 ? o.cases : fallback; }

std::string str(const Rational& r) { return r.to_string(); }

// ---------------------------------------------------------------------------

SuiteResult suite_ultrametric(const SuiteOptions& o) {
    auto rng = suite_rng(o.seed, "ultrametric");
    std::vector<Case> cases;
    const auto primes = primes_up_to(50);
    for (int i = 0; i < cases_or(o, 300); ++i) {
        Rational x = small_rational(rng, 5000, 5000), y = small_rational(rng, 5000, 5000);
        cases.push_back([=]() -> Outcome {
            for (Prime p : primes) {
                Rational nx = padic_norm(x, p), ny = padic_norm(y, p), ns = padic_norm(x + y, p);
                if (ns > std::max(nx, ny)) return fail("ultrametric inequality at p=" + std::to_string(p));
                if (nx != ny && ns != std::max(nx, ny)) return fail("isosceles rule at p=" + std::to_string(p));
                if (padic_norm(x * y, p) != nx * ny) return fail("multiplicativity at p=" + std::to_string(p));
                if (chi(x, p).is_one() != (nx <= Rational(1))) return fail("character kernel at p=" + std::to_string(p));
                if (chi(x + y, p) != chi(x, p) * chi(y, p)) return fail("character additivity at p=" + std::to_string(p));
            }
            if (!x.is_zero()) {
                Rational prod = abs(x);
                for (const auto& f : prime_factors(x.numerator() * x.denominator())) prod *= padic_norm(x, f.get_ui());
                if (prod != Rational(1)) return fail("product formula for " + str(x));
            }
            return {};
        });
    }
    return collect("ultrametric", cases, "max_deviation");
}

SuiteResult suite_lambda(const SuiteOptions& o) {
    auto rng = suite_rng(o.seed, "lambda");
    std::vector<Case> cases;
    cases.push_back([]() -> Outcome {
        for (Prime p : {2ul, 3ul, 5ul, 7ul})
            if (lambda_p(Rational(0), p) != Complex(1, 0)) return fail("lambda_p(0) != 1");
        double d = std::abs(lambda_p_direct(Rational(1, 3), 3) - Complex(0, 1));
        if (d >= 1e-10) return fail("lambda_3(1/3) != i", d);
        return {true, "", d};
    });
    for (Prime p : {3ul, 5ul, 7ul})
        for (int i = 0; i < cases_or(o, 200); ++i) {
            Rational a = padic_draw(rng, p, -3, 3), b = padic_draw(rng, p, -3, 3);
            Rational s = Rational(uniform(rng, 1, 20), uniform(rng, 1, 20)) * pow(prime_rational(p), uniform(rng, -2, 2));
            cases.push_back([=]() -> Outcome {
                Complex la = lambda_p_direct(a, p), lb = lambda_p_direct(b, p);
                double unit = std::max(std::abs(std::abs(la) - 1.0), std::abs(std::abs(lb) - 1.0));
                if (unit >= 1e-12) return fail("|lambda| != 1", unit);
                double sq = std::abs(lambda_p_direct(s * s * a, p) - la);
                double dev = sq;
                if (sq >= 1e-10) return fail("square invariance at a=" + str(a), sq);
                if (a + b != Rational(0)) {
                    double four = std::abs(la * lb - lambda_p_direct(a + b, p) * lambda_p_direct(inverse(a) + inverse(b), p));
                    dev = std::max(dev, four);
                    if (four >= 1e-10) return fail("four-term identity at a=" + str(a) + ", b=" + str(b), four);
                }
                double cache = std::abs(lambda_p(a, p) - la);
                if (cache >= 1e-12) return fail("cached lambda differs at a=" + str(a), cache);
                return {true, "", dev};
            });
        }
    return collect("lambda", cases, "max_deviation");
}

SuiteResult suite_gauss_oracle(const SuiteOptions& o) {
    auto rng = suite_rng(o.seed, "gauss-oracle");
    std::vector<Case> cases;
    const Prime primes[] = {2, 3, 5, 7};
    for (int i = 0; i < cases_or(o, 500); ++i) {
        GaussIntegralSpec s;
        do {
            s.p = primes[uniform(rng, 0, 3)];
            s.nu = uniform(rng, -2, 2);
            s.alpha = padic_draw(rng, s.p, -3, 3);
            s.beta = uniform(rng, 0, 5) == 0 ? Rational(0) : padic_draw(rng, s.p, -3, 3);
        } while (gauss_branch(s) == GaussBranch::indeterminate);
        cases.push_back([=]() -> Outcome {
            auto closed = gauss_closed_form(s);
            double d = std::abs(closed.value - gauss_brute_force(s, gauss_min_depth(s)));
            if (d >= 1e-9)
                return fail("p=" + std::to_string(s.p) + " alpha=" + str(s.alpha) + " beta=" + str(s.beta) +
                                " nu=" + std::to_string(s.nu),
                            d);
            return {true, "", d};
        });
    }
    return collect("gauss-oracle", cases, "max_deviation");
}

Outcome residuals_vanish(const OscillatorModel& m, int order) {
    auto ap = solve_amplitude_phase(m, order);
    auto r1 = amplitude_residual(m, ap);
    auto r2 = phase_residual(ap);
    for (int n = 0; n <= r1.order(); ++n)
        if (!r1[n].is_zero()) return fail(m.name + ": amplitude residual at t^" + std::to_string(n));
    for (int n = 0; n <= r2.order(); ++n)
        if (!r2[n].is_zero()) return fail(m.name + ": phase residual at t^" + std::to_string(n));
    return {};
}

SuiteResult suite_ode_residual(const SuiteOptions& o) {
    auto rng = suite_rng(o.seed, "ode-residual");
    std::vector<Case> cases;
    for (long a : {1L, 2L, 3L})
        for (long b : {1L, 2L, 3L})
            cases.push_back([=]() -> Outcome {
                auto m = preset_example1(a, b);
                if (auto r = residuals_vanish(m, kDefaultOrder); !r.ok) return r;
                auto ap = solve_amplitude_phase(m, kDefaultOrder);
                Rational ra(a), rb(b);
                for (int n = 0; n <= kDefaultOrder; ++n) {
                    Rational g = n == 0 ? rb : n == 1 ? ra * rb : Rational(0);
                    Rational gam = n == 0 ? Rational(0) : pow(-ra, n - 1) / (rb * rb);
                    if (ap.G[n] != g || ap.gamma[n] != gam)
                        return fail(m.name + ": closed form differs at t^" + std::to_string(n));
                }
                return {};
            });
    for (long a : {2L, 4L})
        for (long b : {2L, 4L}) cases.push_back([=] { return residuals_vanish(preset_example2(a, b), kDefaultOrder); });
    cases.push_back([] { return residuals_vanish(preset_free(), kDefaultOrder); });
    for (int i = 0; i < cases_or(o, 20); ++i) {
        OscillatorModel m;
        std::vector<Rational> w;
        for (int k = 0, deg = static_cast<int>(uniform(rng, 0, 2)); k <= deg; ++k) w.push_back(small_rational(rng, 5, 4));
        if (w[0].is_zero()) w[0] = Rational(1);
        m.profile = FrequencyProfile::from_omega_coefficients(w);
        m.G0 = Rational(uniform(rng, 1, 5), uniform(rng, 1, 5));
        m.Gdot0 = small_rational(rng, 3, 4);
        m.C = Rational(uniform(rng, 1, 5), uniform(rng, 1, 5));
        m.name = "random#" + std::to_string(i);
        Rational t1 = small_rational(rng, 1, 40), t2 = small_rational(rng, 1, 40);
        Rational x1 = small_rational(rng, 9, 5), x2 = small_rational(rng, 9, 5);
        cases.push_back([=]() -> Outcome {
            if (auto r = residuals_vanish(m, 16); !r.ok) return r;
            if (t1 == t2) return {};
            auto ap = solve_amplitude_phase(m, 16);
            Trajectory tr(ap, make_endpoints(ap, x1, t1, x2, t2), m.mass);
            auto res = motion_residual(m, tr.series());
            for (int n = 0; n <= res.order(); ++n)
                if (!res[n].is_zero()) return fail(m.name + ": equation of motion residual at t^" + std::to_string(n));
            if (tr.momentum_series() != tr.series().derivative() * m.mass)
                return fail(m.name + ": momentum series differs from m xdot");
            return {};
        });
    }
    return collect("ode-residual", cases, "max_deviation");
}

SuiteResult suite_action_equality(const SuiteOptions& o) {
    auto rng = suite_rng(o.seed, "action-equality");
    std::vector<Case> cases;
    const char* presets[] = {"example1(1,1)", "example1(2,3)", "example2(2,2)", "constant(1)", "free"};
    std::vector<std::pair<OscillatorModel, AmplitudePhase>> solved;
    for (const char* p : presets) {
        auto m = parse_preset(p);
        solved.emplace_back(m, solve_amplitude_phase(m, kDefaultOrder));
    }
    for (std::size_t k = 0; k < solved.size(); ++k)
        for (int i = 0; i < cases_or(o, 100); ++i) {
            Rational t1 = Rational(uniform(rng, -20, 20), 160), t2 = Rational(uniform(rng, -20, 20), 160);
            if (t1 == t2) t2 += Rational(1, 320);
            Rational x1 = small_rational(rng, 30, 7), x2 = small_rational(rng, 30, 7);
            const auto* entry = &solved[k];
            cases.push_back([=]() -> Outcome {
                const auto& [m, ap] = *entry;
                auto ep = make_endpoints(ap, x1, t1, x2, t2);
                certify_endpoints(ap, ep, {0});
                Trajectory tr(ap, ep, m.mass);
                Rational quad = classical_action(ep, m.mass, ap.C);
                Rational bound = classical_action_boundary(tr, m.mass);
                if (quad != bound) return fail(m.name + ": quadratic and boundary actions differ", std::abs((quad - bound).to_double()));
                Rational lhs = ep.G_dprime * ep.gammadot_dprime / ep.G_prime + ep.G_prime * ep.gammadot_prime / ep.G_dprime;
                if (lhs * lhs != Rational(4) * ep.gammadot_dprime * ep.gammadot_prime)
                    return fail(m.name + ": amplitude-phase identity fails");
                if (action_coefficients(ep, m.mass, ap.C)(-x2, -x1) != quad) return fail(m.name + ": parity");
                return {};
            });
        }
    return collect("action-equality", cases, "max_deviation");
}

SuiteResult suite_composition(const SuiteOptions& o) {
    auto rng = suite_rng(o.seed, "composition");
    std::vector<Case> cases;
    for (Prime p : {3ul, 5ul}) {
        cases.push_back([=]() -> Outcome {
            auto half = QuadraticKernel::free_particle(p, Rational(1, 2));
            auto rep = compose_oracle(half, half, QuadraticKernel::free_particle(p, Rational(1)), default_samples(p, -2, 2));
            if (rep.max_deviation >= 1e-9) return fail("free particle 1 = 1/2 + 1/2 at p=" + std::to_string(p), rep.max_deviation);
            return {true, "", rep.max_deviation};
        });
        cases.push_back([=]() -> Outcome {
            auto m = preset_constant(prime_rational(p));
            auto k2 = build_kernel(p, m, Rational(0), Rational(1, 2));
            auto k1 = build_kernel(p, m, Rational(1, 2), Rational(1));
            auto k = build_kernel(p, m, Rational(0), Rational(1));
            auto rep = compose_oracle(k1, k2, k, default_samples(p));
            if (rep.max_deviation >= 1e-9) return fail("constant w0=p split at p=" + std::to_string(p), rep.max_deviation);
            return {true, "", rep.max_deviation};
        });
    }
    for (int i = 0; i < cases_or(o, 12); ++i) {
        Prime p = uniform(rng, 0, 1) ? 3 : 5;
        Rational t1 = Rational(uniform(rng, 1, 9), uniform(rng, 1, 9)), t2 = Rational(uniform(rng, 1, 9), uniform(rng, 1, 9));
        cases.push_back([=]() -> Outcome {
            auto rep = compose_oracle(QuadraticKernel::free_particle(p, t1), QuadraticKernel::free_particle(p, t2),
                                      QuadraticKernel::free_particle(p, t1 + t2), default_samples(p));
            if (rep.max_deviation >= 1e-9)
                return fail("free particle " + str(t1 + t2) + " = " + str(t1) + " + " + str(t2) + " at p=" + std::to_string(p),
                            rep.max_deviation);
            return {true, "", rep.max_deviation};
        });
    }
    return collect("composition", cases, "max_deviation");
}

SuiteResult suite_vacuum(const SuiteOptions&) {
    std::vector<Case> cases;
    for (Prime p : {3ul, 5ul, 7ul})
        cases.push_back([=]() -> Outcome {
            auto m = preset_constant(prime_rational(p));
            for (auto method : {VacuumMethod::closed_form, VacuumMethod::brute_force}) {
                auto r = vacuum_check(p, m, Rational(0), Rational(1), Rational(1), method);
                if (!r.holds) return fail("constant w0=p vacuum fails at p=" + std::to_string(p), r.max_deviation);
            }
            return {};
        });
    cases.push_back([]() -> Outcome {
        auto m = preset_constant(Rational(3));
        for (auto method : {VacuumMethod::closed_form, VacuumMethod::brute_force}) {
            auto r = vacuum_check(3, m, Rational(0), Rational(1), Rational(1, 3), method);
            if (r.holds || !r.witness) return fail("|h/2m|_3 = 3 should violate the vacuum");
        }
        return {};
    });
    for (Prime p : {2ul, 3ul, 5ul, 7ul})
        for (const char* h : {"1", "1/3", "1/5", "7", "2", "1/2"})
            for (int variant = 0; variant < 2; ++variant)
                cases.push_back([=]() -> Outcome {
                    Rational P = prime_rational(p);
                    // |w0 T|_p inside the trigonometric disk, p = 2 included
                    Rational w0 = p == 2 ? P * P : P;
                    auto m = variant == 0 ? preset_constant(w0) : preset_constant(Rational(1));
                    Rational T = variant == 0 ? Rational(1) : P * P;
                    auto cf = vacuum_check(p, m, Rational(0), T, Rational::parse(h), VacuumMethod::closed_form);
                    auto bf = vacuum_check(p, m, Rational(0), T, Rational::parse(h), VacuumMethod::brute_force);
                    if (cf.holds != bf.holds)
                        return fail("closed-form and brute-force verdicts differ at p=" + std::to_string(p) + " h=" + h);
                    if (cf.sufficient_condition && *cf.sufficient_condition && !cf.holds)
                        return fail("sufficient condition holds without a vacuum at p=" + std::to_string(p));
                    return {};
                });
    return collect("vacuum", cases, "max_deviation");
}

SuiteResult suite_discreteness(const SuiteOptions&) {
    std::vector<Case> cases;
    for (long d : {1L, 2L, 3L, 5L})
        cases.push_back([=]() -> Outcome {
            std::vector<Rational> xs;
            for (long k = -20; k <= 20; ++k) xs.emplace_back(k, d);
            AdelicState state;
            auto prof = discreteness_profile(state, xs, 100);
            for (const auto& row : prof.rows) {
                if ((row.omega_product == 1) != row.x.is_integer()) return fail("Omega product wrong at x=" + str(row.x));
                if (row.value != (row.x.is_integer() ? row.real_density : 0.0)) return fail("density wrong at x=" + str(row.x));
            }
            auto marginal = probability_reduction(state, 100);
            if (marginal.finite_weight != Rational(1)) return fail("finite weight is not exactly 1");
            return {};
        });
    return collect("discreteness", cases, "max_deviation");
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"ultrametric",     "lambda",      "gauss-oracle", "ode-residual",
                                                   "action-equality", "composition", "vacuum",       "discreteness"};
    return names;
}

std::vector<SuiteResult> run_suite(const std::string& name, const SuiteOptions& options) {
    static const std::map<std::string, std::function<SuiteResult(const SuiteOptions&)>> table = {
        {"ultrametric", suite_ultrametric},
        {"lambda", suite_lambda},
        {"gauss-oracle", suite_gauss_oracle},
        {"ode-residual", suite_ode_residual},
        {"action-equality", suite_action_equality},
        {"composition", suite_composition},
        {"vacuum", suite_vacuum},
        {"discreteness", suite_discreteness},
    };
    if (name == "all") {
        std::vector<SuiteResult> out;
        for (const auto& n : suite_names()) out.push_back(table.at(n)(options));
        return out;
    }
    auto it = table.find(name);
    if (it == table.end()) throw std::invalid_argument("unknown suite '" + name + "'");
    return {it->second(options)};
}

Json suite_json(const std::vector<SuiteResult>& results, const SuiteOptions& options) {
    Json j;
    j["seed"] = options.seed;
    j["cases_override"] = options.cases > 0 ? Json(options.cases) : Json(nullptr);
    Json arr = Json::array();
    bool all = true;
    for (const auto& r : results) {
        all = all && r.passed();
        arr.push_back(Json{{"name", r.name},
                           {"passed", r.passed()},
                           {"cases", r.cases},
                           {"failures", r.failures},
                           {"messages", r.messages},
                           {"metrics", r.metrics}});
    }
    j["suites"] = std::move(arr);
    j["passed"] = all;
    return j;
}

}  // namespace padicosc
