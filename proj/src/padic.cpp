#include "padicosc/padic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace padicosc {

namespace {

long remove_factor(Integer& n, Prime p) {
    if (n == 0) return 0;
    Integer pz(p);
    return static_cast<long>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t()));
}

Integer mod_inverse(const Integer& a, const Integer& m) {
    Integer out;
    if (mpz_invert(out.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::domain_error("value is not invertible modulo " + m.get_str());
    return out;
}

Integer mod(const Integer& a, const Integer& m) {
    Integer r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

std::vector<unsigned long> base_p_digits(Integer value, Prime p, int count) {
    std::vector<unsigned long> digits;
    digits.reserve(static_cast<std::size_t>(count));
    Integer pz(p);
    for (int i = 0; i < count; ++i) {
        Integer r = mod(value, pz);
        digits.push_back(r.get_ui());
        value = (value - r) / pz;
    }
    return digits;
}

}  // namespace

bool is_prime(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<Prime> primes_up_to(unsigned long bound) {
    std::vector<Prime> out;
    if (bound < 2) return out;
    std::vector<bool> composite(bound + 1, false);
    for (unsigned long i = 2; i <= bound; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (unsigned long j = i * i; j <= bound; j += i) composite[j] = true;
    }
    return out;
}

std::vector<Integer> prime_factors(Integer n) {
    n = abs(n);
    std::vector<Integer> out;
    for (Integer d = 2; d * d <= n; ++d) {
        if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
            out.push_back(d);
            while (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::optional<long> padic_valuation(const Rational& x, Prime p) {
    if (x.is_zero()) return std::nullopt;
    Integer num = x.numerator();
    Integer den = x.denominator();
    return remove_factor(num, p) - remove_factor(den, p);
}

Rational padic_norm(const Rational& x, Prime p) {
    auto v = padic_valuation(x, p);
    if (!v) return Rational(0);
    return pow(Rational(static_cast<long>(p)), -*v);
}

Rational padic_unit_part(const Rational& x, Prime p) {
    auto v = padic_valuation(x, p);
    if (!v) throw std::domain_error("unit part of zero");
    return x * pow(Rational(static_cast<long>(p)), -*v);
}

Integer residue_mod_prime_power(const Rational& x, Prime p, unsigned long k) {
    auto v = padic_valuation(x, p);
    Integer modulus = ipow(p, k);
    if (!v) return 0;
    if (*v < 0) throw std::domain_error("residue of a non-integral p-adic value");
    return mod(x.numerator() * mod_inverse(x.denominator(), modulus), modulus);
}

Rational fractional_part(const Rational& u, Prime p) {
    auto v = padic_valuation(u, p);
    if (!v || *v >= 0) return Rational(0);
    auto k = static_cast<unsigned long>(-*v);
    Integer pk = ipow(p, k);
    Integer cofactor = u.denominator() / pk;  // coprime to p
    Integer r = mod(u.numerator() * mod_inverse(cofactor, pk), pk);
    return Rational(r, pk);
}

Complex UnitPhase::value() const {
    if (angle_.is_zero()) return {1.0, 0.0};
    // angle in [0,1); fold to (-1/2, 1/2] for better conditioning
    long double a = angle_.to_double();
    if (a > 0.5L) a -= 1.0L;
    long double theta = 2.0L * std::numbers::pi_v<long double> * a;
    return {static_cast<double>(std::cos(theta)), static_cast<double>(std::sin(theta))};
}

UnitPhase chi(const Rational& u, Prime p) { return UnitPhase(fractional_part(u, p)); }

UnitPhase chi_real(const Rational& u) { return UnitPhase(-u); }

int omega(const Rational& norm) { return norm <= Rational(1) ? 1 : 0; }

double HalfPower::value() const {
    if (zero) return 0.0;
    return std::pow(static_cast<double>(base), static_cast<double>(twice_exponent) / 2.0);
}

Rational PAdicApprox::value() const {
    if (exact_zero) return Rational(0);
    Integer acc = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) acc = acc * prime + *it;
    return Rational(acc) * pow(Rational(static_cast<long>(prime)), valuation);
}

std::string PAdicApprox::to_string() const {
    std::ostringstream os;
    os << "{p=" << prime << ", valuation=" << valuation << ", digits=[";
    for (std::size_t i = 0; i < digits.size(); ++i) os << (i ? "," : "") << digits[i];
    os << "]}";
    return os.str();
}

PAdicApprox canonical_expansion(const Rational& x, Prime p, int precision) {
    if (precision < 1) throw std::invalid_argument("precision must be >= 1");
    PAdicApprox out;
    out.prime = p;
    out.precision = precision;
    auto v = padic_valuation(x, p);
    if (!v) {
        out.exact_zero = true;
        out.digits.assign(static_cast<std::size_t>(precision), 0);
        return out;
    }
    out.valuation = *v;
    Integer r = residue_mod_prime_power(padic_unit_part(x, p), p,
                                        static_cast<unsigned long>(precision));
    out.digits = base_p_digits(r, p, precision);
    return out;
}

std::optional<PAdicApprox> padic_sqrt(const Rational& x, Prime p, int precision) {
    if (precision < 1) throw std::invalid_argument("precision must be >= 1");
    if (x.is_zero()) throw std::invalid_argument("padic_sqrt of zero");
    long v = *padic_valuation(x, p);
    if (v % 2 != 0) return std::nullopt;
    Rational unit = padic_unit_part(x, p);
    auto n = static_cast<unsigned long>(precision);

    Integer root;
    if (p == 2) {
        Integer target = residue_mod_prime_power(unit, 2, n + 2);
        if (mod(target, 8) != 1) return std::nullopt;
        root = 1;
        // invariant: root^2 = target mod 2^k
        for (unsigned long k = 3; k <= n + 1; ++k) {
            Integer m = ipow(2, k + 1);
            if (mod(root * root - target, m) != 0) root += ipow(2, k - 1);
        }
        Integer modulus = ipow(2, n);
        root = mod(root, modulus);
        if (mod(root, 4) == 3) root = modulus - root;
    } else {
        Integer modulus = ipow(p, n);
        Integer target = residue_mod_prime_power(unit, p, n);
        unsigned long r = mod(target, Integer(p)).get_ui();
        std::optional<unsigned long> seed;
        for (unsigned long y = 1; y <= (p - 1) / 2; ++y) {
            if ((y * y) % p == r) {
                seed = y;
                break;
            }
        }
        if (!seed) return std::nullopt;
        root = *seed;
        // Newton/Hensel: each step at least doubles the number of correct digits
        for (unsigned long correct = 1; correct < n; correct *= 2) {
            Integer step = mod((root * root - target) * mod_inverse(2 * root, modulus), modulus);
            root = mod(root - step, modulus);
        }
    }

    PAdicApprox out;
    out.prime = p;
    out.precision = precision;
    out.valuation = v / 2;
    out.digits = base_p_digits(root, p, precision);
    return out;
}

}  // namespace padicosc
