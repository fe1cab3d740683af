#pragma once

#include <optional>
#include <vector>

#include "padicosc/classical.hpp"
#include "padicosc/gauss.hpp"

namespace padicosc {

/// Propagator of a quadratic action A x''^2 + B x'' x' + D x'^2 at one place (0 = real).
struct QuadraticKernel {
    Prime place = 0;
    Rational A, B, D;
    Rational h{1};
    Rational mass{1};
    /// Lower bound on v_p((c_N - c_2N)/h) over A, B, D; nullopt when the
    /// coefficients are exact. Evaluation needs 2 min(v(x''), v(x'), 0) + this >= 0.
    std::optional<long> precision_valuation;

    Rational action(const Rational& x_dprime, const Rational& x_prime) const {
        return A * x_dprime * x_dprime + B * x_dprime * x_prime + D * x_prime * x_prime;
    }
    /// Kernel for the reversed time interval: A -> -D, B -> -B, D -> -A.
    QuadraticKernel reversed() const;

    /// A = D = m/(2T), B = -m/T.
    static QuadraticKernel free_particle(Prime place, const Rational& T, const Rational& mass = Rational(1),
                                         const Rational& h = Rational(1));
    /// A = D = (m w0/2) cot(w0 T), B = -m w0 / sin(w0 T), trig values from trig_at.
    static QuadraticKernel constant_frequency(Prime place, const Rational& w0, const Rational& T,
                                              const Rational& mass = Rational(1), const Rational& h = Rational(1),
                                              int min_trig_terms = kDefaultOrder);
};

struct KernelOptions {
    Rational h{1};
    int order = kDefaultOrder;
    int min_trig_terms = kDefaultOrder;
    /// Re-solve at 2N with doubled trig terms and bound the coefficient drift (p-adic places).
    bool doubling_check = true;
};

/// Kernel coefficients straight from the action; no certification.
QuadraticKernel kernel_from_action(Prime place, const AmplitudePhase& ap, const EndpointData& ep,
                                   const Rational& mass, const Rational& h);

/// Solves the model, certifies the endpoint evaluation at the place and, for
/// p-adic places, runs the doubling check. Throws CausticError, DivergenceError
/// or PrecisionError.
QuadraticKernel build_kernel(Prime place, const OscillatorModel& model, const Rational& t_prime,
                             const Rational& t_dprime, const KernelOptions& options = {});

/// lambda_v(-B/2h) |B/h|_v^{1/2} chi_v(-S/h).
struct KernelValue {
    Prime place = 0;
    Complex lambda_factor{1.0, 0.0};
    /// |B/h|_v, exact; the modulus is its square root.
    Rational norm;
    UnitPhase phase;

    double modulus() const;
    Complex value() const;
};

/// lambda_inf(a) = (1 - i sign a)/sqrt 2.
Complex lambda_real(const Rational& a);

/// Throws PrecisionError when the endpoints exceed the kernel's precision radius.
KernelValue evaluate_kernel(const QuadraticKernel& k, const Rational& x_dprime, const Rational& x_prime);

struct CompositionReport {
    Prime p = 3;
    long nu = 0;      // integration ball |x|_p <= p^nu
    long depth = 0;   // coset depth of the brute-force sum
    std::size_t samples = 0;
    double max_deviation = 0;
};

/// Integrates K1(x'', x) K2(x, x') over x by coset summation and compares with
/// the direct kernel K(x'', x') on every sample pair. K1 covers (t, t''), K2
/// covers (t', t), K covers (t', t''). depth < 0 selects the minimal depth.
CompositionReport compose_oracle(const QuadraticKernel& k1, const QuadraticKernel& k2, const QuadraticKernel& direct,
                                 const std::vector<std::pair<Rational, Rational>>& samples, long depth = -1);

/// Endpoint pairs x = u p^k for units u in {1, p-1} and k in [lo, hi], plus 0.
std::vector<std::pair<Rational, Rational>> default_samples(Prime p, long lo = -1, long hi = 1);

}  // namespace padicosc
