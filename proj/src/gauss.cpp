#include "padicosc/gauss.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "padicosc/errors.hpp"
#include "padicosc/parallel.hpp"

namespace padicosc {

namespace {

using u128 = unsigned __int128;

constexpr std::uint64_t kMaxTerms = std::uint64_t{1} << 32;
constexpr std::uint64_t kParallelThreshold = std::uint64_t{1} << 17;

long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

long ceil_div(long a, long b) { return -floor_div(-a, b); }

long val(const Rational& x, Prime p) { return *padic_valuation(x, p); }

std::uint64_t pow_u64(Prime p, long e) {
    std::uint64_t out = 1;
    for (long i = 0; i < e; ++i) {
        if (out > UINT64_MAX / p) throw Error("coset count exceeds 64 bits");
        out *= p;
    }
    return out;
}

// Integer coefficient c with {unit * p^e * j^k}_p = (c * j^k mod p^K) / p^K.
std::uint64_t phase_coefficient(const Rational& coeff, Prime p, long shift, unsigned K) {
    if (coeff.is_zero()) return 0;
    long e = val(coeff, p) + shift;
    if (e >= 0) return 0;
    Integer unit_res = residue_mod_prime_power(padic_unit_part(coeff, p), p, K);
    Integer c = unit_res * ipow(p, static_cast<unsigned long>(static_cast<long>(K) + e));
    Integer modulus = ipow(p, K);
    mpz_mod(c.get_mpz_t(), c.get_mpz_t(), modulus.get_mpz_t());
    return c.get_ui();
}

struct LambdaKey {
    Prime p;
    long parity;
    unsigned long residue;
    auto operator<=>(const LambdaKey&) const = default;
};

std::mutex& lambda_mutex() {
    static std::mutex m;
    return m;
}

std::map<LambdaKey, Complex>& lambda_cache() {
    static std::map<LambdaKey, Complex> c;
    return c;
}

}  // namespace

std::string to_string(GaussBranch b) {
    switch (b) {
        case GaussBranch::small_alpha: return "small-alpha";
        case GaussBranch::gaussian: return "gaussian";
        case GaussBranch::indeterminate: return "indeterminate";
    }
    return "?";
}

long gauss_min_depth(const GaussIntegralSpec& s) {
    long m = -s.nu;
    if (!s.alpha.is_zero()) {
        m = std::max(m, s.nu - val(Rational(2) * s.alpha, s.p));
        m = std::max(m, ceil_div(-val(s.alpha, s.p), 2));
    }
    if (!s.beta.is_zero()) m = std::max(m, -val(s.beta, s.p));
    return m;
}

PhaseMultiset gauss_phase_multiset(const GaussIntegralSpec& s, long depth) {
    if (!is_prime(s.p)) throw std::invalid_argument("p must be prime");
    long need = gauss_min_depth(s);
    if (depth < need)
        throw DepthTooSmall("depth " + std::to_string(depth) + " below local-constancy depth " +
                            std::to_string(need));
    long count_exp = s.nu + depth;
    std::uint64_t terms = pow_u64(s.p, count_exp);
    if (terms > kMaxTerms) throw Error("coset sum too large: p^" + std::to_string(count_exp));

    long ka = s.alpha.is_zero() ? 0 : std::max(0L, -(val(s.alpha, s.p) - 2 * s.nu));
    long kb = s.beta.is_zero() ? 0 : std::max(0L, -(val(s.beta, s.p) - s.nu));
    auto K = static_cast<unsigned>(std::max(ka, kb));
    std::uint64_t ca = phase_coefficient(s.alpha, s.p, -2 * s.nu, K);
    std::uint64_t cb = phase_coefficient(s.beta, s.p, -s.nu, K);

    PhaseMultiset base(s.p, K);
    const std::uint64_t M = base.modulus();
    auto accumulate = [&](PhaseMultiset& out, std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t j = begin; j < end; ++j) {
            std::uint64_t jm = j % M;
            u128 quad = static_cast<u128>(ca) * jm % M * jm % M;
            u128 lin = static_cast<u128>(cb) * jm % M;
            out.add(static_cast<std::uint64_t>((quad + lin) % M));
        }
    };

    unsigned workers = worker_count();
    if (terms < kParallelThreshold || workers <= 1) {
        accumulate(base, 0, terms);
        return base;
    }
    std::uint64_t chunk = (terms + workers - 1) / workers;
    auto parts = parallel_map<std::shared_ptr<PhaseMultiset>>(workers, [&](std::size_t w) {
        auto part = std::make_shared<PhaseMultiset>(s.p, K);
        std::uint64_t begin = w * chunk;
        std::uint64_t end = std::min(terms, begin + chunk);
        if (begin < end) accumulate(*part, begin, end);
        return part;
    });
    for (const auto& part : parts) base.merge(*part);
    return base;
}

Complex gauss_brute_force(const GaussIntegralSpec& s, long depth) {
    PhaseMultiset phases = gauss_phase_multiset(s, depth);
    return phases.sum() * std::pow(static_cast<double>(s.p), -static_cast<double>(depth));
}

Complex lambda_p_direct(const Rational& alpha, Prime p) {
    if (alpha.is_zero()) return {1.0, 0.0};
    long v4 = val(Rational(4) * alpha, p);
    GaussIntegralSpec s{p, alpha, Rational(0), floor_div(v4, 2) + 1};
    Complex integral = gauss_brute_force(s, gauss_min_depth(s));
    double scale = std::pow(static_cast<double>(p), -static_cast<double>(val(Rational(2) * alpha, p)) / 2.0);
    return integral * scale;
}

Complex lambda_p(const Rational& alpha, Prime p) {
    if (alpha.is_zero()) return {1.0, 0.0};
    long v = val(alpha, p);
    long parity = ((v % 2) + 2) % 2;
    unsigned long residue_exp = p == 2 ? 3 : 1;
    unsigned long residue = residue_mod_prime_power(padic_unit_part(alpha, p), p, residue_exp).get_ui();
    LambdaKey key{p, parity, residue};
    {
        std::lock_guard lock(lambda_mutex());
        auto it = lambda_cache().find(key);
        if (it != lambda_cache().end()) return it->second;
    }
    Rational representative = Rational(static_cast<long>(residue)) *
                              pow(Rational(static_cast<long>(p)), parity);
    Complex value = lambda_p_direct(representative, p);
    std::lock_guard lock(lambda_mutex());
    lambda_cache().emplace(key, value);
    return value;
}

GaussBranch gauss_branch(const GaussIntegralSpec& s) {
    if (s.alpha.is_zero()) return GaussBranch::small_alpha;
    if (val(s.alpha, s.p) >= 2 * s.nu) return GaussBranch::small_alpha;
    if (val(Rational(4) * s.alpha, s.p) < 2 * s.nu) return GaussBranch::gaussian;
    return GaussBranch::indeterminate;
}

GaussResult gauss_closed_form(const GaussIntegralSpec& s) {
    if (!is_prime(s.p)) throw std::invalid_argument("p must be prime");
    GaussResult out;
    out.branch = gauss_branch(s);
    switch (out.branch) {
        case GaussBranch::small_alpha: {
            bool inside = s.beta.is_zero() || val(s.beta, s.p) - s.nu >= 0;
            out.exact.magnitude = inside ? HalfPower{s.p, 2 * s.nu, false} : HalfPower::null();
            break;
        }
        case GaussBranch::gaussian: {
            Rational two_alpha = Rational(2) * s.alpha;
            bool inside = s.beta.is_zero() || val(s.beta / two_alpha, s.p) + s.nu >= 0;
            out.exact.magnitude = inside ? HalfPower{s.p, val(two_alpha, s.p), false} : HalfPower::null();
            out.exact.phase = chi(-(s.beta * s.beta) / (Rational(4) * s.alpha), s.p);
            out.exact.lambda_factor = lambda_p(s.alpha, s.p);
            break;
        }
        case GaussBranch::indeterminate:
            throw IndeterminateBranch("p = 2 Gauss integral with |alpha|_2 between the branch bounds (alpha=" +
                                      s.alpha.to_string() + ", nu=" + std::to_string(s.nu) + ")");
    }
    out.value = out.exact.value();
    return out;
}

}  // namespace padicosc
