#pragma once

#include <vector>

#include "padicosc/padic.hpp"

namespace padicosc {

inline constexpr int kDefaultOrder = 24;
inline constexpr int kMaxTrigTerms = 512;

/// Truncated power series a_0 + a_1 t + ... + a_N t^N with rational coefficients.
///
/// Arithmetic truncates to the smaller order of the operands. A series flagged
/// `polynomial` is known to vanish beyond its stored coefficients, which lets
/// convergence certificates grant evaluation everywhere.
class RationalSeries {
public:
    RationalSeries() : RationalSeries(0) {}
    explicit RationalSeries(int order);
    RationalSeries(std::vector<Rational> coeffs, int order, bool polynomial = false);

    static RationalSeries constant(const Rational& c, int order);
    static RationalSeries variable(int order);  // the series t
    /// Exact polynomial; throws if its degree exceeds the order.
    static RationalSeries polynomial(std::vector<Rational> coeffs, int order);

    int order() const { return order_; }
    bool is_polynomial() const { return polynomial_; }
    const std::vector<Rational>& coefficients() const { return c_; }
    const Rational& operator[](int n) const { return c_.at(static_cast<std::size_t>(n)); }

    RationalSeries truncated(int order) const;
    RationalSeries derivative() const;
    /// Antiderivative with the given constant term; order grows by one.
    RationalSeries integral(const Rational& constant = Rational(0)) const;
    /// 1 / f; needs an invertible constant term.
    RationalSeries inverse() const;
    /// f(g(t)) for g with zero constant term.
    RationalSeries compose(const RationalSeries& inner) const;
    Rational evaluate(const Rational& t) const;

    RationalSeries& operator+=(const RationalSeries& o);
    RationalSeries& operator-=(const RationalSeries& o);
    RationalSeries& operator*=(const Rational& s);

    friend RationalSeries operator+(RationalSeries a, const RationalSeries& b) { return a += b; }
    friend RationalSeries operator-(RationalSeries a, const RationalSeries& b) { return a -= b; }
    friend RationalSeries operator-(const RationalSeries& a) { return a * Rational(-1); }
    friend RationalSeries operator*(RationalSeries a, const Rational& s) { return a *= s; }
    friend RationalSeries operator*(const Rational& s, RationalSeries a) { return a *= s; }
    friend RationalSeries operator*(const RationalSeries& a, const RationalSeries& b);
    friend RationalSeries operator/(const RationalSeries& a, const RationalSeries& b) { return a * b.inverse(); }
    friend bool operator==(const RationalSeries& a, const RationalSeries& b) {
        return a.order_ == b.order_ && a.c_ == b.c_;
    }

private:
    std::vector<Rational> c_;
    int order_;
    bool polynomial_ = false;
};

/// Formal compositions with g(0) = 0.
RationalSeries series_sin(const RationalSeries& g);
RationalSeries series_cos(const RationalSeries& g);
RationalSeries series_exp(const RationalSeries& g);
/// log(1 + g).
RationalSeries series_log1p(const RationalSeries& g);

/// Truncated Maclaurin values of sin u and cos u, each with `terms` terms.
struct TrigValues {
    Rational sin;
    Rational cos;
    int terms = 0;
};

TrigValues trig_rational(const Rational& u, int terms);

/// Smallest term count >= min_terms whose real truncation error is below 1e-40.
/// Throws DivergenceError past kMaxTrigTerms.
int trig_terms_for(const Rational& u, int min_terms = kDefaultOrder);

/// sin/cos Maclaurin series converge p-adically iff |u|_p < p^{-1/(p-1)}.
bool trig_converges_padic(const Rational& u, Prime p);

struct PadicRadius {
    Prime p = 2;
    /// Lower growth bound: v_p(a_n) >= n * slope for the stored coefficients.
    double slope = 0;
    long t_valuation = 0;
    bool granted = false;
    /// Lower bound on v_p of every tail term a_n t^n, n > N.
    double tail_valuation = 0;
};

/// Where a truncated series may be evaluated at t without changing characters.
struct ConvergenceCertificate {
    Rational t;
    bool polynomial = false;
    double real_radius = 0;  // +inf for polynomials
    bool real_granted = false;
    std::vector<PadicRadius> places;

    bool granted(Prime p) const;
};

ConvergenceCertificate convergence_certificate(const RationalSeries& series, const std::vector<Prime>& primes,
                                               const Rational& t);

/// Throws DivergenceError when any requested place (0 = real) refuses.
void require_convergence(const RationalSeries& series, const std::vector<Prime>& places, const Rational& t,
                         const char* what);

}  // namespace padicosc
