#include "padicosc/propagator.hpp"

#include <algorithm>
#include <cmath>

#include "padicosc/errors.hpp"

namespace padicosc {

namespace {

std::optional<long> min_valuation(std::initializer_list<Rational> values, Prime p) {
    std::optional<long> out;
    for (const auto& v : values) {
        auto val = padic_valuation(v, p);
        if (val && (!out || *val < *out)) out = val;
    }
    return out;
}

}  // namespace

QuadraticKernel QuadraticKernel::reversed() const {
    QuadraticKernel r = *this;
    r.A = -D;
    r.B = -B;
    r.D = -A;
    return r;
}

QuadraticKernel QuadraticKernel::free_particle(Prime place, const Rational& T, const Rational& mass,
                                               const Rational& h) {
    if (T.is_zero()) throw CausticError("free-particle kernel needs T != 0");
    QuadraticKernel k;
    k.place = place;
    k.A = mass / (Rational(2) * T);
    k.D = k.A;
    k.B = -mass / T;
    k.h = h;
    k.mass = mass;
    return k;
}

QuadraticKernel QuadraticKernel::constant_frequency(Prime place, const Rational& w0, const Rational& T,
                                                    const Rational& mass, const Rational& h, int min_trig_terms) {
    auto tr = trig_at(w0 * T, min_trig_terms);
    if (tr.sin.is_zero()) throw CausticError("sin(w0 T) vanishes");
    QuadraticKernel k;
    k.place = place;
    k.A = mass * w0 / Rational(2) * tr.cos / tr.sin;
    k.D = k.A;
    k.B = -mass * w0 / tr.sin;
    k.h = h;
    k.mass = mass;
    return k;
}

QuadraticKernel kernel_from_action(Prime place, const AmplitudePhase& ap, const EndpointData& ep,
                                   const Rational& mass, const Rational& h) {
    if (h.is_zero()) throw std::invalid_argument("h must be nonzero");
    auto c = action_coefficients(ep, mass, ap.C);
    QuadraticKernel k;
    k.place = place;
    k.A = c.A;
    k.B = c.B;
    k.D = c.D;
    k.h = h;
    k.mass = mass;
    return k;
}

QuadraticKernel build_kernel(Prime place, const OscillatorModel& model, const Rational& t_prime,
                             const Rational& t_dprime, const KernelOptions& options) {
    auto make = [&](int order, int trig_terms) {
        auto ap = solve_amplitude_phase(model, order);
        auto ep = make_endpoints(ap, Rational(0), t_prime, Rational(0), t_dprime, trig_terms);
        certify_endpoints(ap, ep, {place});
        return kernel_from_action(place, ap, ep, model.mass, options.h);
    };
    QuadraticKernel k = make(options.order, options.min_trig_terms);
    if (place == 0 || !options.doubling_check) return k;

    QuadraticKernel fine = make(2 * options.order, 2 * options.min_trig_terms);
    const Rational& h = options.h;
    k.precision_valuation = min_valuation({(k.A - fine.A) / h, (k.B - fine.B) / h, (k.D - fine.D) / h}, place);
    if (k.precision_valuation && *k.precision_valuation < 0)
        throw PrecisionError("kernel coefficients unstable under N -> 2N at p=" + std::to_string(place));
    if (padic_valuation(k.B / h, place) != padic_valuation(fine.B / h, place) ||
        std::abs(lambda_p(-k.B / (Rational(2) * h), place) - lambda_p(-fine.B / (Rational(2) * h), place)) > 1e-12)
        throw PrecisionError("lambda class of -B/2h unstable under N -> 2N at p=" + std::to_string(place));
    return k;
}

double KernelValue::modulus() const { return std::sqrt(norm.to_double()); }

Complex KernelValue::value() const { return lambda_factor * modulus() * phase.value(); }

Complex lambda_real(const Rational& a) {
    const double r = 1.0 / std::sqrt(2.0);
    return {r, -r * a.sign()};
}

KernelValue evaluate_kernel(const QuadraticKernel& k, const Rational& x_dprime, const Rational& x_prime) {
    if (k.B.is_zero()) throw std::invalid_argument("degenerate kernel: B = 0");
    KernelValue out;
    out.place = k.place;
    Rational b = k.B / k.h;
    Rational s = k.action(x_dprime, x_prime) / k.h;
    Rational arg = -b / Rational(2);
    if (k.place == 0) {
        out.lambda_factor = lambda_real(arg);
        out.norm = abs(b);
        out.phase = chi_real(-s);
        return out;
    }
    const Prime p = k.place;
    if (k.precision_valuation) {
        long m = std::min<long>(0, min_valuation({x_dprime, x_prime}, p).value_or(0));
        if (2 * m + *k.precision_valuation < 0)
            throw PrecisionError("endpoints outside the kernel's precision radius at p=" + std::to_string(p));
    }
    out.lambda_factor = lambda_p(arg, p);
    out.norm = padic_norm(b, p);
    out.phase = chi(-s, p);
    return out;
}

std::vector<std::pair<Rational, Rational>> default_samples(Prime p, long lo, long hi) {
    std::vector<Rational> values{Rational(0)};
    const Rational base(static_cast<long>(p));
    for (long e = lo; e <= hi; ++e)
        for (long u : {1L, static_cast<long>(p) - 1}) {
            Rational v = Rational(u) * pow(base, e);
            if (std::find(values.begin(), values.end(), v) == values.end()) values.push_back(v);
        }
    std::vector<std::pair<Rational, Rational>> out;
    for (const auto& a : values)
        for (const auto& b : values) out.emplace_back(a, b);
    return out;
}

CompositionReport compose_oracle(const QuadraticKernel& k1, const QuadraticKernel& k2, const QuadraticKernel& direct,
                                 const std::vector<std::pair<Rational, Rational>>& samples, long depth) {
    const Prime p = direct.place;
    if (p == 0 || k1.place != p || k2.place != p) throw Unsupported("composition oracle runs at a single prime");
    if (k1.h != direct.h || k2.h != direct.h) throw std::invalid_argument("kernels must share h");
    const Rational& h = direct.h;
    Rational alpha = -(k1.D + k2.A) / h;
    if (alpha.is_zero()) throw Unsupported("intermediate quadratic coefficient vanishes");

    std::vector<Rational> betas;
    for (const auto& [x2, x1] : samples) betas.push_back(-(k1.B * x2 + k2.B * x1) / h);

    // smallest ball where every sample sits in the Gaussian branch with its stationary point inside
    CompositionReport rep;
    rep.p = p;
    rep.samples = samples.size();
    const Rational P(static_cast<long>(p));
    long nu = -8;
    for (;; ++nu) {
        if (nu > 64) throw Unsupported("no integration ball found for the composition oracle");
        bool ok = true;
        for (const auto& b : betas) {
            GaussIntegralSpec s{p, alpha, b, nu};
            if (gauss_branch(s) != GaussBranch::gaussian ||
                omega(pow(P, -nu) * padic_norm(b / (Rational(2) * alpha), p)) != 1) {
                ok = false;
                break;
            }
        }
        if (ok) break;
    }
    rep.nu = nu;
    long m = depth;
    if (m < 0) {
        m = 0;
        for (const auto& b : betas) m = std::max(m, gauss_min_depth({p, alpha, b, nu}));
    }
    rep.depth = m;

    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& [x2, x1] = samples[i];
        KernelValue a = evaluate_kernel(k1, x2, Rational(0));
        KernelValue b = evaluate_kernel(k2, Rational(0), x1);
        Complex integral = gauss_brute_force({p, alpha, betas[i], nu}, m);
        Complex composed = a.value() * b.value() * integral;
        Complex expect = evaluate_kernel(direct, x2, x1).value();
        rep.max_deviation = std::max(rep.max_deviation, std::abs(composed - expect));
    }
    return rep;
}

}  // namespace padicosc
