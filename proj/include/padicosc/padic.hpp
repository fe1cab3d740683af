#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "padicosc/rational.hpp"

namespace padicosc {

using Prime = unsigned long;
using Complex = std::complex<double>;

inline constexpr int kDefaultPrecision = 32;

bool is_prime(unsigned long n);
std::vector<Prime> primes_up_to(unsigned long bound);
/// Distinct prime factors of |n| in increasing order (trial division).
std::vector<Integer> prime_factors(Integer n);

/// Exponent of p in x; std::nullopt stands for +infinity (x = 0).
std::optional<long> padic_valuation(const Rational& x, Prime p);

/// |x|_p = p^{-v}, and |0|_p = 0.
Rational padic_norm(const Rational& x, Prime p);

/// x / p^{v_p(x)}; x must be nonzero.
Rational padic_unit_part(const Rational& x, Prime p);

/// Representative of x mod p^k in [0, p^k) for x with p-adic norm <= 1.
Integer residue_mod_prime_power(const Rational& x, Prime p, unsigned long k);

/// {u}_p: the rational r = k/p^m in [0,1) with |u - r|_p <= 1.
Rational fractional_part(const Rational& u, Prime p);

/// Exact point e^{2 pi i angle} on the unit circle, angle kept in [0, 1).
class UnitPhase {
public:
    UnitPhase() = default;
    explicit UnitPhase(const Rational& angle) : angle_(real_fractional_part(angle)) {}

    const Rational& angle() const { return angle_; }
    bool is_one() const { return angle_.is_zero(); }
    UnitPhase conj() const { return UnitPhase(-angle_); }
    Complex value() const;

    friend UnitPhase operator*(const UnitPhase& a, const UnitPhase& b) {
        return UnitPhase(a.angle_ + b.angle_);
    }
    friend bool operator==(const UnitPhase&, const UnitPhase&) = default;

private:
    Rational angle_{0};
};

/// Additive character chi_p(u) = exp(2 pi i {u}_p).
UnitPhase chi(const Rational& u, Prime p);

/// Real-place character chi_inf(u) = exp(-2 pi i u).
UnitPhase chi_real(const Rational& u);

/// Indicator of the unit ball: 1 iff the given norm value is <= 1.
int omega(const Rational& norm);
inline int omega_at(const Rational& x, Prime p) { return omega(padic_norm(x, p)); }

/// Exact nonnegative p^{twice_exponent / 2}; zero when `zero` is set.
struct HalfPower {
    Prime base = 1;
    long twice_exponent = 0;
    bool zero = false;

    double value() const;
    static HalfPower null() { return {1, 0, true}; }
    friend bool operator==(const HalfPower&, const HalfPower&) = default;
};

/// p-adic number known modulo p^{valuation + precision}: p^v * sum digits[i] p^i.
struct PAdicApprox {
    Prime prime = 2;
    long valuation = 0;
    std::vector<unsigned long> digits;  // least significant first
    int precision = 0;
    bool exact_zero = false;

    /// Truncated value p^v * sum digits[i] p^i as a rational.
    Rational value() const;
    std::string to_string() const;
};

/// Canonical expansion of x to N digits; requires x's unit part to be a p-adic unit.
PAdicApprox canonical_expansion(const Rational& x, Prime p, int precision = kDefaultPrecision);

/// Hensel square root to N digits, or nullopt when x is not a square in Q_p.
/// The returned branch has leading digit <= (p-1)/2 (for p = 2, the root = 1 mod 4).
std::optional<PAdicApprox> padic_sqrt(const Rational& x, Prime p, int precision = kDefaultPrecision);

}  // namespace padicosc
