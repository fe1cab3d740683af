#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "padicosc/errors.hpp"
#include "padicosc/suites.hpp"

using namespace padicosc;

namespace {

enum Exit : int {
    kOk = 0,
    kFailure = 1,
    kIndeterminate = 2,
    kDepthTooSmall = 3,
    kCaustic = 4,
    kDivergence = 5,
    kPrecision = 6,
    kUsage = 64,
};

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

Rational parse_rational(const std::string& s, const char* what) {
    try {
        return Rational::parse(s);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string(what) + ": " + e.what());
    }
}

int exit_code(const Error& e) {
    if (dynamic_cast<const IndeterminateBranch*>(&e)) return kIndeterminate;
    if (dynamic_cast<const DepthTooSmall*>(&e)) return kDepthTooSmall;
    if (dynamic_cast<const CausticError*>(&e)) return kCaustic;
    if (dynamic_cast<const DivergenceError*>(&e)) return kDivergence;
    if (dynamic_cast<const PrecisionError*>(&e)) return kPrecision;
    return kFailure;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

Prime parse_place(const std::string& s) {
    if (s == "real" || s == "inf" || s == "0") return 0;
    std::size_t used = 0;
    unsigned long p = 0;
    try {
        p = std::stoul(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || !is_prime(p)) throw UsageError("not a place: '" + s + "' (use 'real' or a prime)");
    return p;
}

std::vector<Prime> parse_places(const std::string& s) {
    std::vector<Prime> out;
    for (const auto& item : split(s, ',')) out.push_back(parse_place(item));
    return out;
}

struct ModelArgs {
    std::string preset = "example1(1,1)";
    std::string model_json;
    std::string mass;

    OscillatorModel load() const {
        OscillatorModel m;
        try {
            if (!model_json.empty()) {
                std::ifstream in(model_json);
                if (!in) throw UsageError("cannot read model file '" + model_json + "'");
                m = model_from_json(Json::parse(in));
            } else {
                m = parse_preset(preset);
            }
        } catch (const Json::exception& e) {
            throw UsageError(std::string("model JSON: ") + e.what());
        } catch (const UsageError&) {
            throw;
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        if (!mass.empty()) m.mass = parse_rational(mass, "--mass");
        return m;
    }
};

void add_model_options(CLI::App* cmd, ModelArgs& args) {
    cmd->add_option("--preset", args.preset, "example1(a,b), example2(a,b), constant(w0) or free")
        ->capture_default_str();
    cmd->add_option("--model-json", args.model_json, "JSON file {omega_coeffs: [\"num/den\", ...], ...}");
    cmd->add_option("--mass", args.mass, "mass m (overrides the model)");
}

std::vector<std::pair<Rational, Rational>> parse_pairs(const std::string& s) {
    std::vector<std::pair<Rational, Rational>> out;
    for (const auto& item : split(s, ',')) {
        auto parts = split(item, ':');
        if (parts.size() != 2) throw UsageError("sample '" + item + "' must be x'':x'");
        out.emplace_back(parse_rational(parts[0], "sample"), parse_rational(parts[1], "sample"));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"p-adic and adelic harmonic oscillator with time-dependent frequency"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    // gauss
    std::string g_alpha, g_beta;
    unsigned long g_p = 3;
    long g_nu = 0, g_depth = -1;
    auto* gauss = app.add_subcommand("gauss", "ball Gauss integral, closed form and coset-sum oracle");
    gauss->add_option("-p,--prime", g_p, "prime")->required();
    gauss->add_option("-a,--alpha", g_alpha, "alpha as num/den")->required();
    gauss->add_option("-b,--beta", g_beta, "beta as num/den")->required();
    gauss->add_option("-n,--nu", g_nu, "ball radius exponent: |x|_p <= p^nu")->required();
    gauss->add_option("--oracle-depth", g_depth, "coset depth m for the brute-force oracle");

    // classical
    ModelArgs c_model;
    std::string c_t1 = "0", c_t2 = "1/10", c_x1 = "0", c_x2 = "1", c_places = "real";
    int c_order = kDefaultOrder;
    auto* classical = app.add_subcommand("classical", "amplitude, phase, trajectory and action");
    add_model_options(classical, c_model);
    classical->add_option("--t1", c_t1, "t'")->capture_default_str();
    classical->add_option("--t2", c_t2, "t''")->capture_default_str();
    classical->add_option("--x1", c_x1, "x'")->capture_default_str();
    classical->add_option("--x2", c_x2, "x''")->capture_default_str();
    classical->add_option("--order", c_order, "truncation order N")->capture_default_str();
    classical->add_option("--places", c_places, "places to certify, e.g. real,3,5")->capture_default_str();

    // propagator
    ModelArgs k_model;
    std::string k_place = "real", k_t1 = "0", k_t2 = "1", k_h = "1", k_samples, k_compose;
    int k_order = kDefaultOrder;
    auto* propagator = app.add_subcommand("propagator", "quadratic-action kernel at one place");
    add_model_options(propagator, k_model);
    propagator->add_option("--place", k_place, "real or a prime")->capture_default_str();
    propagator->add_option("--t1", k_t1, "t'")->capture_default_str();
    propagator->add_option("--t2", k_t2, "t''")->capture_default_str();
    propagator->add_option("--planck", k_h, "Planck constant h")->capture_default_str();
    propagator->add_option("--order", k_order, "truncation order N")->capture_default_str();
    propagator->add_option("--samples", k_samples, "endpoint pairs x'':x',... (default grid)");
    propagator->add_option("--compose", k_compose, "intermediate time for the composition oracle");

    // vacuum
    ModelArgs v_model;
    v_model.preset = "constant(3)";
    std::string v_primes = "3,5,7", v_t1 = "0", v_t2 = "1", v_h = "1", v_method = "both";
    auto* vacuum = app.add_subcommand("vacuum", "Omega-vacuum condition per prime");
    add_model_options(vacuum, v_model);
    vacuum->add_option("--primes", v_primes, "comma-separated primes")->capture_default_str();
    vacuum->add_option("--t1", v_t1, "t'")->capture_default_str();
    vacuum->add_option("--t2", v_t2, "t''")->capture_default_str();
    vacuum->add_option("--planck", v_h, "Planck constant h")->capture_default_str();
    vacuum->add_option("--method", v_method, "closed-form, brute-force or both")
        ->check(CLI::IsMember({"closed-form", "brute-force", "both"}))
        ->capture_default_str();

    // adelic product
    ModelArgs a_model;
    std::string a_places = "real,3,5", a_t1 = "0", a_t2 = "1", a_x1 = "0", a_x2 = "1", a_h = "1";
    auto* adelic = app.add_subcommand("adelic", "restricted partial product of kernels over a finite set of places");
    add_model_options(adelic, a_model);
    adelic->add_option("--places", a_places, "comma-separated places")->capture_default_str();
    adelic->add_option("--t1", a_t1, "t'")->capture_default_str();
    adelic->add_option("--t2", a_t2, "t''")->capture_default_str();
    adelic->add_option("--x1", a_x1, "x'")->capture_default_str();
    adelic->add_option("--x2", a_x2, "x''")->capture_default_str();
    adelic->add_option("--planck", a_h, "Planck constant h")->capture_default_str();

    // discreteness
    std::string d_xs, d_format = "json";
    unsigned long d_cutoff = 100;
    bool d_mixed = false;
    auto* discreteness = app.add_subcommand("discreteness", "|Psi|^2 with the Omega tail, x in units of l0");
    discreteness->add_option("--xs", d_xs, "comma-separated rationals")->required();
    discreteness->add_option("--cutoff", d_cutoff, "largest prime in the Omega product")->capture_default_str();
    discreteness->add_flag("--mixed", d_mixed, "mixed state: no sharp lattice");
    discreteness->add_option("--format", d_format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();

    // suite
    std::string s_name;
    SuiteOptions s_opts;
    auto* suite = app.add_subcommand("suite", "named property and oracle suites");
    suite->add_option("name", s_name, "suite name or 'all'")->required();
    suite->add_option("--cases", s_opts.cases, "cases per randomized block");
    suite->add_option("--seed", s_opts.seed, "random seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*gauss) {
            if (!is_prime(g_p)) throw UsageError("-p must be prime");
            GaussIntegralSpec spec{g_p, parse_rational(g_alpha, "--alpha"), parse_rational(g_beta, "--beta"), g_nu};
            Json out;
            auto closed = gauss_closed_form(spec);
            out["closed_form"] = gauss_json(spec, closed);
            out["min_depth"] = gauss_min_depth(spec);
            if (g_depth >= 0) {
                Complex brute = gauss_brute_force(spec, g_depth);
                out["oracle"] = Json{{"depth", g_depth}, {"value", to_json(brute)}};
                out["deviation"] = std::abs(brute - closed.value);
            }
            std::cout << dump(envelope("gauss", out));
        } else if (*classical) {
            auto m = c_model.load();
            auto ap = solve_amplitude_phase(m, c_order);
            auto ep = make_endpoints(ap, parse_rational(c_x1, "--x1"), parse_rational(c_t1, "--t1"),
                                     parse_rational(c_x2, "--x2"), parse_rational(c_t2, "--t2"));
            auto places = parse_places(c_places);
            certify_endpoints(ap, ep, places);
            Trajectory tr(ap, ep, m.mass);
            Json out = classical_json(m, ap, tr);
            Json certified = Json::array();
            for (Prime p : places) certified.push_back(p == 0 ? Json("real") : Json(p));
            out["certified_places"] = certified;
            std::cout << dump(envelope("classical", out));
        } else if (*propagator) {
            auto m = k_model.load();
            Prime place = parse_place(k_place);
            KernelOptions opts;
            opts.h = parse_rational(k_h, "--planck");
            opts.order = k_order;
            Rational t1 = parse_rational(k_t1, "--t1"), t2 = parse_rational(k_t2, "--t2");
            auto k = build_kernel(place, m, t1, t2, opts);
            auto samples = k_samples.empty() ? default_samples(place == 0 ? 2 : place, -1, 1) : parse_pairs(k_samples);
            Json out = kernel_json(k, samples);
            out["model"] = m.name;
            if (!k_compose.empty()) {
                if (place == 0) throw UsageError("--compose needs a prime place");
                Rational tm = parse_rational(k_compose, "--compose");
                auto k2 = build_kernel(place, m, t1, tm, opts);
                auto k1 = build_kernel(place, m, tm, t2, opts);
                out["composition"] = composition_json(compose_oracle(k1, k2, k, default_samples(place)));
            }
            std::cout << dump(envelope("propagator", out));
        } else if (*vacuum) {
            auto m = v_model.load();
            Rational t1 = parse_rational(v_t1, "--t1"), t2 = parse_rational(v_t2, "--t2"), h = parse_rational(v_h, "--planck");
            Json reports = Json::array();
            int status = kOk;
            for (Prime p : parse_places(v_primes)) {
                if (p == 0) throw UsageError("--primes takes primes only");
                Json entry;
                entry["p"] = p;
                try {
                    if (v_method != "brute-force")
                        entry["closed_form"] = vacuum_json(vacuum_check(p, m, t1, t2, h, VacuumMethod::closed_form));
                    if (v_method != "closed-form")
                        entry["brute_force"] = vacuum_json(vacuum_check(p, m, t1, t2, h, VacuumMethod::brute_force));
                } catch (const Error& e) {
                    entry["error"] = e.what();
                    if (status == kOk) status = exit_code(e);
                }
                if (p == 2) entry["note"] = "p = 2: coset sum only, no sufficient condition";
                reports.push_back(entry);
            }
            std::cout << dump(envelope("vacuum", Json{{"model", m.name}, {"reports", reports}}));
            return status;
        } else if (*adelic) {
            auto m = a_model.load();
            KernelOptions opts;
            opts.h = parse_rational(a_h, "--planck");
            auto rep = adelic_propagator_product(parse_places(a_places), m, parse_rational(a_t1, "--t1"),
                                                 parse_rational(a_t2, "--t2"), parse_rational(a_x2, "--x2"),
                                                 parse_rational(a_x1, "--x1"), opts);
            std::cout << dump(envelope("adelic", product_json(rep)));
            if (!rep.partial_product) return kFailure;
        } else if (*discreteness) {
            std::vector<Rational> xs;
            for (const auto& s : split(d_xs, ',')) xs.push_back(parse_rational(s, "--xs"));
            AdelicState state;
            state.mixed = d_mixed;
            auto prof = discreteness_profile(state, xs, d_cutoff);
            if (d_format == "csv")
                std::cout << discreteness_csv(prof);
            else
                std::cout << dump(envelope("discreteness", discreteness_json(prof)));
        } else if (*suite) {
            std::vector<SuiteResult> results;
            try {
                results = run_suite(s_name, s_opts);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            Json out = suite_json(results, s_opts);
            std::cout << dump(envelope("suite", out));
            return out["passed"].get<bool>() ? kOk : kFailure;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kOk;
}
