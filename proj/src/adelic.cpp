#include "padicosc/adelic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "padicosc/errors.hpp"
#include "padicosc/parallel.hpp"

namespace padicosc {

Adele::Adele(Rational real, std::map<Prime, Rational> finite, std::set<Prime> S)
    : real_(std::move(real)), finite_(std::move(finite)), S_(std::move(S)) {
    for (Prime p : S_)
        if (!is_prime(p)) throw std::invalid_argument("exception set holds a non-prime: " + std::to_string(p));
    for (const auto& [p, x] : finite_) {
        if (!is_prime(p)) throw std::invalid_argument("finite component at non-prime " + std::to_string(p));
        if (!S_.count(p) && padic_norm(x, p) > Rational(1))
            throw std::invalid_argument("component at p=" + std::to_string(p) + " leaves Z_p but p is not in S");
    }
}

Adele Adele::principal(const Rational& x) {
    std::map<Prime, Rational> finite;
    std::set<Prime> S;
    for (const auto& f : prime_factors(x.denominator())) {
        Prime p = f.get_ui();
        S.insert(p);
        finite[p] = x;
    }
    return Adele(x, std::move(finite), std::move(S));
}

Rational Adele::component(Prime p) const {
    auto it = finite_.find(p);
    return it == finite_.end() ? Rational(0) : it->second;
}

OmegaProduct omega_product(const Rational& x, unsigned long cutoff) {
    OmegaProduct out;
    out.cutoff = cutoff;
    for (const auto& f : prime_factors(x.denominator())) {
        if (!f.fits_ulong_p() || f.get_ui() > cutoff)
            throw CutoffTooSmall("denominator of " + x.to_string() + " has prime factor " + f.get_str() +
                                 " above the cutoff " + std::to_string(cutoff));
        out.witnesses.push_back(f.get_ui());
    }
    out.value = out.witnesses.empty() ? 1 : 0;
    return out;
}

std::string to_string(VacuumMethod m) { return m == VacuumMethod::closed_form ? "closed-form" : "brute-force"; }

std::vector<Rational> vacuum_samples(Prime p) {
    std::vector<Rational> out{Rational(0)};
    const Rational P(static_cast<long>(p));
    for (long k = -3; k <= 3; ++k) {
        out.push_back(pow(P, k));
        if (p != 2) out.push_back(Rational(static_cast<long>(p) - 1) * pow(P, k));
    }
    return out;
}

VacuumReport vacuum_check(const QuadraticKernel& k, VacuumMethod method) {
    const Prime p = k.place;
    if (p == 0) throw Unsupported("vacuum check runs at a prime");
    VacuumReport rep;
    rep.p = p;
    rep.requested = method;
    rep.method = p == 2 ? VacuumMethod::brute_force : method;
    const Rational alpha = -k.D / k.h;
    for (const Rational& x : vacuum_samples(p)) {
        VacuumSample s;
        s.x_dprime = x;
        Complex pre = evaluate_kernel(k, x, Rational(0)).value();
        GaussIntegralSpec spec{p, alpha, -k.B * x / k.h, 0};
        Complex integral;
        bool brute = rep.method == VacuumMethod::brute_force;
        if (!brute) {
            try {
                integral = gauss_closed_form(spec).value;
            } catch (const IndeterminateBranch&) {
                brute = true;
                rep.method = VacuumMethod::brute_force;
            }
        }
        if (brute) integral = gauss_brute_force(spec, gauss_min_depth(spec));
        s.lhs = pre * integral;
        s.rhs = omega_at(x, p);
        s.deviation = std::abs(s.lhs - Complex(s.rhs, 0));
        rep.max_deviation = std::max(rep.max_deviation, s.deviation);
        if (s.deviation >= kVacuumTolerance && !rep.witness) rep.witness = x;
        rep.samples.push_back(s);
    }
    rep.holds = !rep.witness.has_value();
    return rep;
}

bool vacuum_sufficient_condition(Prime p, const EndpointData& ep, const Rational& mass, const Rational& h) {
    Rational lhs = padic_norm(ep.Gdot_prime / ep.G_prime, p);
    Rational mid = padic_norm(ep.gammadot_prime * ep.trig_delta.cos / ep.trig_delta.sin, p);
    Rational rhs = padic_norm(h / (Rational(2) * mass), p);
    return lhs < mid && mid > rhs;
}

VacuumReport vacuum_check(Prime p, const OscillatorModel& model, const Rational& t_prime, const Rational& t_dprime,
                          const Rational& h, VacuumMethod method, const KernelOptions& options) {
    KernelOptions opts = options;
    opts.h = h;
    auto k = build_kernel(p, model, t_prime, t_dprime, opts);
    VacuumReport rep = vacuum_check(k, method);
    if (p != 2) {
        auto ap = solve_amplitude_phase(model, opts.order);
        auto ep = make_endpoints(ap, Rational(0), t_prime, Rational(0), t_dprime, opts.min_trig_terms);
        rep.sufficient_condition = vacuum_sufficient_condition(p, ep, model.mass, h);
    }
    return rep;
}

RealFactor ground_state_density() {
    return {"oscillator ground state, x in units of l0",
            [](const Rational& x) {
                double v = x.to_double();
                return std::exp(-v * v) / std::sqrt(std::numbers::pi);
            }};
}

WaveFactor AdelicState::factor(Prime p) const {
    auto it = finite.find(p);
    return it == finite.end() ? WaveFactor{} : it->second;
}

Rational AdelicState::alpha_at(Prime place) const {
    auto it = alpha.find(place);
    return it == alpha.end() ? Rational(0) : it->second;
}

EigenEvolutionReport eigen_evolution_check(const AdelicState& state, Prime p, const OscillatorModel& model,
                                           const Rational& t_prime, const Rational& t_dprime, const Rational& h,
                                           const KernelOptions& options) {
    if (state.factor(p).kind != WaveFactor::Kind::omega)
        throw Unsupported("only the Omega factor is evolved at p=" + std::to_string(p));
    EigenEvolutionReport rep;
    rep.p = p;
    if (t_prime == t_dprime) return rep;  // U is the identity

    KernelOptions opts = options;
    opts.h = h;
    auto k = build_kernel(p, model, t_prime, t_dprime, opts);
    auto vac = vacuum_check(k, VacuumMethod::brute_force);
    if (!vac.holds)
        throw VacuumAbsent("no Omega eigenstate at p=" + std::to_string(p) + ", witness x''=" +
                           vac.witness->to_string());
    auto ap = solve_amplitude_phase(model, opts.order);
    Rational delta = ap.gamma.evaluate(t_dprime) - ap.gamma.evaluate(t_prime);
    rep.phase_argument = state.alpha_at(p) * delta;
    rep.phase_fraction = fractional_part(rep.phase_argument, p);
    Complex phase = chi(rep.phase_argument, p).value();
    for (const auto& s : vac.samples)
        rep.deviation = std::max(rep.deviation, std::abs(s.lhs - phase * static_cast<double>(s.rhs)));
    return rep;
}

RestrictedProduct adelic_propagator_product(const std::vector<Prime>& places, const KernelFactory& factory,
                                            const Rational& x_dprime, const Rational& x_prime) {
    RestrictedProduct out;
    out.places = parallel_map<PlaceKernel>(places.size(), [&](std::size_t i) {
        PlaceKernel pk;
        pk.place = places[i];
        try {
            pk.kernel = factory(pk.place);
            pk.value = evaluate_kernel(*pk.kernel, x_dprime, x_prime);
        } catch (const Error& e) {
            pk.error = (pk.place == 0 ? std::string("real") : "p=" + std::to_string(pk.place)) + ": " + e.what();
        }
        return pk;
    });
    Complex product{1.0, 0.0};
    for (const auto& pk : out.places) {
        if (!pk.error.empty()) return out;
        product *= pk.value->value();
    }
    out.partial_product = product;
    return out;
}

RestrictedProduct adelic_propagator_product(const std::vector<Prime>& places, const OscillatorModel& model,
                                            const Rational& t_prime, const Rational& t_dprime,
                                            const Rational& x_dprime, const Rational& x_prime,
                                            const KernelOptions& options) {
    return adelic_propagator_product(
        places, [&](Prime place) { return build_kernel(place, model, t_prime, t_dprime, options); }, x_dprime,
        x_prime);
}

ProbabilityMarginal probability_reduction(const AdelicState& state, unsigned long cutoff) {
    ProbabilityMarginal out;
    out.real = state.real;
    for (const auto& [p, f] : state.finite) {
        if (f.kind == WaveFactor::Kind::declared && f.declared_norm != Rational(1))
            throw NormalizationError("factor at p=" + std::to_string(p) + " has norm " + f.declared_norm.to_string());
        // Omega over Z_p and normalized factors over Q_p both integrate to 1
        out.finite_weight *= f.kind == WaveFactor::Kind::omega ? Rational(1) : f.declared_norm;
    }
    for (Prime p : primes_up_to(cutoff))
        if (!state.finite.count(p)) ++out.tail_places;
    return out;
}

DiscretenessProfile discreteness_profile(const AdelicState& state, const std::vector<Rational>& xs,
                                         unsigned long cutoff) {
    for (const auto& [p, f] : state.finite)
        if (f.kind != WaveFactor::Kind::omega)
            throw Unsupported("discreteness profile needs Omega at every finite place (p=" + std::to_string(p) + ")");
    DiscretenessProfile out;
    out.cutoff = cutoff;
    out.suppressed = state.mixed;
    for (const auto& x : xs) {
        DiscretenessRow row;
        row.x = x;
        row.real_density = state.real.density(x);
        // Omega^2 = Omega, so |Psi|^2 picks up the plain product
        row.omega_product = omega_product(x, cutoff).value;
        row.value = state.mixed ? row.real_density : row.real_density * row.omega_product;
        out.rows.push_back(row);
    }
    return out;
}

std::optional<double> length_scale(const OscillatorModel& model, const Rational& h) {
    if (!model.profile.constant_omega) return std::nullopt;
    return std::sqrt((h / (model.mass * abs(*model.profile.constant_omega))).to_double());
}

UnitPhase padic_dynamical_phase(const Rational& alpha, const Rational& gamma_t, const Rational& gamma0, Prime p) {
    return chi(alpha * (gamma_t - gamma0), p);
}

}  // namespace padicosc
