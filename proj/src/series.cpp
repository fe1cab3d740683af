#include "padicosc/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "padicosc/errors.hpp"

namespace padicosc {

RationalSeries::RationalSeries(int order) : c_(static_cast<std::size_t>(order + 1)), order_(order) {
    if (order < 0) throw std::invalid_argument("negative series order");
}

RationalSeries::RationalSeries(std::vector<Rational> coeffs, int order, bool polynomial)
    : c_(std::move(coeffs)), order_(order), polynomial_(polynomial) {
    if (order < 0) throw std::invalid_argument("negative series order");
    if (polynomial_) {
        for (std::size_t n = static_cast<std::size_t>(order) + 1; n < c_.size(); ++n)
            if (!c_[n].is_zero()) throw std::invalid_argument("polynomial degree exceeds series order");
    }
    c_.resize(static_cast<std::size_t>(order + 1));
}

RationalSeries RationalSeries::constant(const Rational& c, int order) {
    return RationalSeries({c}, order, true);
}

RationalSeries RationalSeries::variable(int order) {
    if (order < 1) throw std::invalid_argument("t needs order >= 1");
    return RationalSeries({Rational(0), Rational(1)}, order, true);
}

RationalSeries RationalSeries::polynomial(std::vector<Rational> coeffs, int order) {
    return RationalSeries(std::move(coeffs), order, true);
}

RationalSeries RationalSeries::truncated(int order) const {
    if (order > order_) throw std::invalid_argument("cannot extend a truncated series");
    bool still_poly = polynomial_;
    if (still_poly)
        for (int n = order + 1; n <= order_; ++n) still_poly = still_poly && c_[n].is_zero();
    return RationalSeries(std::vector<Rational>(c_.begin(), c_.begin() + order + 1), order, still_poly);
}

RationalSeries RationalSeries::derivative() const {
    if (order_ == 0) return RationalSeries({Rational(0)}, 0, polynomial_);
    std::vector<Rational> d(static_cast<std::size_t>(order_));
    for (int n = 1; n <= order_; ++n) d[n - 1] = c_[n] * Rational(n);
    return RationalSeries(std::move(d), order_ - 1, polynomial_);
}

RationalSeries RationalSeries::integral(const Rational& constant) const {
    std::vector<Rational> out(static_cast<std::size_t>(order_ + 2));
    out[0] = constant;
    for (int n = 0; n <= order_; ++n) out[n + 1] = c_[n] / Rational(n + 1);
    return RationalSeries(std::move(out), order_ + 1, polynomial_);
}

RationalSeries RationalSeries::inverse() const {
    if (c_[0].is_zero()) throw std::domain_error("series inverse needs a nonzero constant term");
    std::vector<Rational> inv(c_.size());
    Rational c0inv = padicosc::inverse(c_[0]);
    inv[0] = c0inv;
    for (int n = 1; n <= order_; ++n) {
        Rational acc(0);
        for (int k = 1; k <= n; ++k)
            if (!c_[k].is_zero()) acc += c_[k] * inv[n - k];
        inv[n] = -acc * c0inv;
    }
    return RationalSeries(std::move(inv), order_, false);
}

RationalSeries RationalSeries::compose(const RationalSeries& inner) const {
    if (!inner[0].is_zero()) throw std::domain_error("composition needs an inner series with zero constant term");
    int order = std::min(order_, inner.order_);
    RationalSeries g = inner.truncated(order);
    // Horner in g: f(g) = c0 + g (c1 + g (c2 + ...))
    RationalSeries acc = RationalSeries::constant(c_[order], order);
    for (int n = order - 1; n >= 0; --n) {
        acc = acc * g;
        acc.c_[0] += c_[n];
    }
    acc.polynomial_ = false;
    return acc;
}

Rational RationalSeries::evaluate(const Rational& t) const {
    Rational acc(0);
    for (int n = order_; n >= 0; --n) acc = acc * t + c_[n];
    return acc;
}

RationalSeries& RationalSeries::operator+=(const RationalSeries& o) {
    int order = std::min(order_, o.order_);
    auto zero_beyond = [order](const std::vector<Rational>& c) {
        return std::all_of(c.begin() + order + 1, c.end(), [](const Rational& r) { return r.is_zero(); });
    };
    polynomial_ = polynomial_ && o.polynomial_ && zero_beyond(c_) && zero_beyond(o.c_);
    c_.resize(static_cast<std::size_t>(order + 1));
    for (int n = 0; n <= order; ++n) c_[n] += o.c_[n];
    order_ = order;
    return *this;
}

RationalSeries& RationalSeries::operator-=(const RationalSeries& o) { return *this += o * Rational(-1); }

RationalSeries& RationalSeries::operator*=(const Rational& s) {
    for (auto& c : c_) c *= s;
    return *this;
}

RationalSeries operator*(const RationalSeries& a, const RationalSeries& b) {
    int order = std::min(a.order_, b.order_);
    std::vector<Rational> out(static_cast<std::size_t>(order + 1));
    int deg_a = -1, deg_b = -1;
    for (int n = 0; n <= a.order_; ++n)
        if (!a.c_[n].is_zero()) deg_a = n;
    for (int n = 0; n <= b.order_; ++n)
        if (!b.c_[n].is_zero()) deg_b = n;
    for (int i = 0; i <= std::min(order, deg_a); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (int j = 0; i + j <= order && j <= deg_b; ++j)
            if (!b.c_[j].is_zero()) out[i + j] += a.c_[i] * b.c_[j];
    }
    bool poly = a.polynomial_ && b.polynomial_ && deg_a + deg_b <= order;
    return RationalSeries(std::move(out), order, poly);
}

namespace {

// sum_k coeff(k) g^k with coeff from a generator, g(0) = 0.
template <typename Coeff>
RationalSeries maclaurin_compose(const RationalSeries& g, Coeff coeff) {
    if (!g[0].is_zero()) throw std::domain_error("series composition needs g(0) = 0");
    int order = g.order();
    RationalSeries acc = RationalSeries::constant(coeff(0), order);
    RationalSeries power = RationalSeries::constant(Rational(1), order);
    for (int k = 1; k <= order; ++k) {
        power = power * g;
        Rational c = coeff(k);
        if (!c.is_zero()) acc += power * c;
    }
    return RationalSeries(acc.coefficients(), order, false);
}

double log_magnitude(const Integer& z) {
    long exp = 0;
    double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
    return std::log(std::abs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

Rational factorial(int n) {
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(f);
}

}  // namespace

RationalSeries series_sin(const RationalSeries& g) {
    return maclaurin_compose(g, [](int k) {
        if (k % 2 == 0) return Rational(0);
        return Rational((k / 2) % 2 == 0 ? 1 : -1) / factorial(k);
    });
}

RationalSeries series_cos(const RationalSeries& g) {
    return maclaurin_compose(g, [](int k) {
        if (k % 2 == 1) return Rational(0);
        return Rational((k / 2) % 2 == 0 ? 1 : -1) / factorial(k);
    });
}

RationalSeries series_exp(const RationalSeries& g) {
    return maclaurin_compose(g, [](int k) { return inverse(factorial(k)); });
}

RationalSeries series_log1p(const RationalSeries& g) {
    return maclaurin_compose(g, [](int k) {
        if (k == 0) return Rational(0);
        return Rational(k % 2 == 1 ? 1 : -1, k);
    });
}

TrigValues trig_rational(const Rational& u, int terms) {
    if (terms < 1) throw std::invalid_argument("trig needs at least one term");
    TrigValues out;
    out.terms = terms;
    Rational u2 = u * u;
    // Horner on sin u = u (1 - u^2/(2*3) (1 - u^2/(4*5) (...)))
    Rational s(1), c(1);
    for (int k = terms - 1; k >= 1; --k) {
        s = Rational(1) - u2 * s / Rational((2 * k) * (2 * k + 1));
        c = Rational(1) - u2 * c / Rational((2 * k - 1) * (2 * k));
    }
    out.sin = u * s;
    out.cos = c;
    return out;
}

int trig_terms_for(const Rational& u, int min_terms) {
    double a = std::abs(u.to_double());
    if (!std::isfinite(a)) throw DivergenceError("trigonometric argument not finite");
    int terms = std::max(1, min_terms);
    // first omitted terms are u^{2K}/(2K)! and u^{2K+1}/(2K+1)!
    auto log_tail = [&](int k) {
        double e = 2.0 * k;
        return a == 0 ? -1e9 : e * std::log(a) - std::lgamma(e + 1.0);
    };
    while (std::max(log_tail(terms), log_tail(terms) + std::log(a) - std::log(2.0 * terms + 1)) > std::log(1e-40)) {
        ++terms;
        if (terms > kMaxTrigTerms) throw DivergenceError("trigonometric argument too large for Maclaurin evaluation");
    }
    return terms;
}

bool trig_converges_padic(const Rational& u, Prime p) {
    auto v = padic_valuation(u, p);
    if (!v) return true;
    return static_cast<long>(p - 1) * *v > 1;
}

bool ConvergenceCertificate::granted(Prime p) const {
    if (p == 0) return real_granted;
    for (const auto& r : places)
        if (r.p == p) return r.granted;
    return false;
}

ConvergenceCertificate convergence_certificate(const RationalSeries& series, const std::vector<Prime>& primes,
                                               const Rational& t) {
    ConvergenceCertificate cert;
    cert.t = t;
    const int N = series.order();
    // coefficients vanishing over the whole upper half are read as a terminated expansion
    bool terminated = N >= 4;
    for (int n = N / 2 + 1; n <= N && terminated; ++n) terminated = series[n].is_zero();
    cert.polynomial = series.is_polynomial() || terminated;

    if (cert.polynomial) {
        cert.real_radius = std::numeric_limits<double>::infinity();
    } else {
        // root-test estimate from the upper half of the stored coefficients
        double growth = 0;
        for (int n = std::max(1, N / 2); n <= N; ++n) {
            if (series[n].is_zero()) continue;
            double log_abs = log_magnitude(series[n].numerator()) - log_magnitude(series[n].denominator());
            growth = std::max(growth, std::exp(log_abs / n));
        }
        cert.real_radius = growth == 0 ? std::numeric_limits<double>::infinity() : 1.0 / growth;
    }
    cert.real_granted = std::abs(t.to_double()) < cert.real_radius;

    for (Prime p : primes) {
        PadicRadius r;
        r.p = p;
        auto tv = padic_valuation(t, p);
        r.t_valuation = tv.value_or(0);
        bool any = false;
        double slope = std::numeric_limits<double>::infinity();
        for (int n = 1; n <= N; ++n) {
            if (series[n].is_zero()) continue;
            any = true;
            slope = std::min(slope, static_cast<double>(*padic_valuation(series[n], p)) / n);
        }
        r.slope = any ? slope : 0.0;
        if (cert.polynomial || !any || !tv) {
            r.granted = true;
            r.tail_valuation = std::numeric_limits<double>::infinity();
        } else {
            double growth = r.slope + static_cast<double>(*tv);
            r.granted = growth > 0;
            r.tail_valuation = (N + 1) * growth;
        }
        cert.places.push_back(r);
    }
    return cert;
}

void require_convergence(const RationalSeries& series, const std::vector<Prime>& places, const Rational& t,
                         const char* what) {
    std::vector<Prime> primes;
    for (Prime p : places)
        if (p != 0) primes.push_back(p);
    auto cert = convergence_certificate(series, primes, t);
    for (Prime p : places) {
        if (!cert.granted(p))
            throw DivergenceError(std::string(what) + " series not certified at t=" + t.to_string() + " for place " +
                                  (p == 0 ? std::string("real") : std::to_string(p)));
    }
}

}  // namespace padicosc
