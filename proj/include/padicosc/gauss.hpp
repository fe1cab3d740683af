#pragma once

#include <string>

#include "padicosc/padic.hpp"
#include "padicosc/phase_sum.hpp"

namespace padicosc {

/// Integral of chi_p(alpha x^2 + beta x) over the ball |x|_p <= p^nu (Haar measure, vol(Z_p) = 1).
struct GaussIntegralSpec {
    Prime p = 3;
    Rational alpha;
    Rational beta;
    long nu = 0;
};

enum class GaussBranch {
    small_alpha,    // |alpha|_p <= p^{-2 nu}
    gaussian,       // |4 alpha|_p > p^{-2 nu}
    indeterminate,  // neither (p = 2 only)
};

std::string to_string(GaussBranch b);

/// Exact decomposition magnitude * phase * lambda of a closed-form value.
struct AmplitudeValue {
    HalfPower magnitude;
    UnitPhase phase;
    Complex lambda_factor{1.0, 0.0};

    Complex value() const { return lambda_factor * magnitude.value() * phase.value(); }
};

struct GaussResult {
    GaussBranch branch = GaussBranch::small_alpha;
    AmplitudeValue exact;
    Complex value;
};

/// lambda_p(alpha), evaluated once per square class and cached (thread-safe).
Complex lambda_p(const Rational& alpha, Prime p);

/// lambda_p(alpha) straight from the normalized Gauss sum, no class reduction or cache.
Complex lambda_p_direct(const Rational& alpha, Prime p);

GaussBranch gauss_branch(const GaussIntegralSpec& spec);

/// Closed form of the ball Gauss integral. Throws IndeterminateBranch in the p = 2 gap.
GaussResult gauss_closed_form(const GaussIntegralSpec& spec);

/// Smallest depth m at which the integrand is constant on cosets of p^m Z_p.
long gauss_min_depth(const GaussIntegralSpec& spec);

/// Exact multiset of integrand phases over the p^{nu+m} coset representatives.
/// Throws DepthTooSmall when depth < gauss_min_depth(spec).
PhaseMultiset gauss_phase_multiset(const GaussIntegralSpec& spec, long depth);

/// Coset-sum oracle: p^{-m} * sum_j chi_p(alpha x_j^2 + beta x_j), x_j = p^{-nu} j.
Complex gauss_brute_force(const GaussIntegralSpec& spec, long depth);

}  // namespace padicosc
