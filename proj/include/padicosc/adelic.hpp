#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "padicosc/propagator.hpp"

namespace padicosc {

/// Restricted-product element: components outside S lie in Z_p.
///
/// Only explicitly stored finite components are carried; an absent component
/// at p is 0 (trivially in Z_p).
class Adele {
public:
    /// Throws std::invalid_argument when some p outside S has |component|_p > 1.
    Adele(Rational real, std::map<Prime, Rational> finite, std::set<Prime> S);

    /// Diagonal image of a rational: S is the set of primes dividing its denominator.
    static Adele principal(const Rational& x);

    const Rational& real() const { return real_; }
    const std::map<Prime, Rational>& finite() const { return finite_; }
    const std::set<Prime>& exceptions() const { return S_; }
    Rational component(Prime p) const;

private:
    Rational real_;
    std::map<Prime, Rational> finite_;
    std::set<Prime> S_;
};

struct OmegaProduct {
    int value = 1;                // prod_{p <= cutoff} Omega(|x|_p)
    std::vector<Prime> witnesses;  // primes where Omega vanishes
    unsigned long cutoff = 0;
};

/// Throws CutoffTooSmall when the denominator of x has a prime factor above the cutoff.
OmegaProduct omega_product(const Rational& x, unsigned long cutoff);

enum class VacuumMethod { closed_form, brute_force };
std::string to_string(VacuumMethod m);

struct VacuumSample {
    Rational x_dprime;
    Complex lhs;  // integral of K_p(x'', x') over |x'|_p <= 1
    int rhs = 0;  // Omega(|x''|_p)
    double deviation = 0;
};

struct VacuumReport {
    Prime p = 3;
    bool holds = false;
    VacuumMethod requested = VacuumMethod::closed_form;
    /// Method actually used; closed form falls back to brute force at p = 2 or in the indeterminate branch.
    VacuumMethod method = VacuumMethod::closed_form;
    std::optional<Rational> witness;  // first sampled x'' where the two sides differ
    std::vector<VacuumSample> samples;
    double max_deviation = 0;
    /// |Gdot'/G'| < |gammadot'/tan delta| > |h/2m|; nullopt at p = 2 or without amplitude data.
    std::optional<bool> sufficient_condition;
};

inline constexpr double kVacuumTolerance = 1e-9;

/// x'' = u p^k for k in [-3, 3], u in {1, p-1}, plus 0.
std::vector<Rational> vacuum_samples(Prime p);

/// Checks the Omega-vacuum condition for a p-adic kernel.
VacuumReport vacuum_check(const QuadraticKernel& k, VacuumMethod method);

/// Builds the kernel from the model (mass from the model) and adds the sufficient condition.
VacuumReport vacuum_check(Prime p, const OscillatorModel& model, const Rational& t_prime, const Rational& t_dprime,
                          const Rational& h, VacuumMethod method, const KernelOptions& options = {});

/// Sufficient condition for p != 2 evaluated from amplitude and phase data.
bool vacuum_sufficient_condition(Prime p, const EndpointData& ep, const Rational& mass, const Rational& h);

/// p-adic factor of an adelic state.
struct WaveFactor {
    enum class Kind { omega, declared };
    Kind kind = Kind::omega;
    /// Integral of |psi_p|^2 over Q_p, declared by the caller for non-Omega factors.
    Rational declared_norm{1};
    std::string label = "Omega";
};

/// Real factor |psi_inf(x)|^2 as a density.
struct RealFactor {
    std::string description;
    std::function<double(const Rational& x)> density;
};

/// Ground state of the constant-frequency oscillator with x in units of l0: e^{-x^2}/sqrt(pi).
RealFactor ground_state_density();

struct AdelicState {
    RealFactor real = ground_state_density();
    /// Factors at p in S; every other prime carries Omega(|x|_p).
    std::map<Prime, WaveFactor> finite;
    /// alpha_v per place (0 = real); absent means 0.
    std::map<Prime, Rational> alpha;
    /// Superposition over (S, alpha); discreteness is then not sharp.
    bool mixed = false;

    WaveFactor factor(Prime p) const;
    Rational alpha_at(Prime place) const;
};

struct EigenEvolutionReport {
    Prime p = 3;
    Rational phase_argument;  // alpha_p (gamma'' - gamma')
    Rational phase_fraction;  // its p-adic fractional part
    double deviation = 0;     // max |U_p Omega - chi_p(...) Omega| over the samples
};

/// Applies U_p to the Omega factor by coset summation. Throws Unsupported for
/// non-Omega factors and VacuumAbsent when the kernel has no Omega eigenstate.
EigenEvolutionReport eigen_evolution_check(const AdelicState& state, Prime p, const OscillatorModel& model,
                                           const Rational& t_prime, const Rational& t_dprime, const Rational& h,
                                           const KernelOptions& options = {});

struct PlaceKernel {
    Prime place = 0;
    std::optional<QuadraticKernel> kernel;
    std::optional<KernelValue> value;
    std::string error;  // empty on success
};

/// Finite product over the requested places; never a limit of the full product.
struct RestrictedProduct {
    std::vector<PlaceKernel> places;
    std::optional<Complex> partial_product;  // absent when any place failed
    std::string label = "restricted partial product";
};

using KernelFactory = std::function<QuadraticKernel(Prime place)>;

RestrictedProduct adelic_propagator_product(const std::vector<Prime>& places, const KernelFactory& factory,
                                            const Rational& x_dprime, const Rational& x_prime);
RestrictedProduct adelic_propagator_product(const std::vector<Prime>& places, const OscillatorModel& model,
                                            const Rational& t_prime, const Rational& t_dprime,
                                            const Rational& x_dprime, const Rational& x_prime,
                                            const KernelOptions& options = {});

struct ProbabilityMarginal {
    RealFactor real;
    Rational finite_weight{1};  // exact product of the finite-place integrals
    std::size_t tail_places = 0;  // Omega places up to the cutoff, each contributing 1
};

/// Throws NormalizationError when a declared factor's norm is not 1.
ProbabilityMarginal probability_reduction(const AdelicState& state, unsigned long cutoff);

struct DiscretenessRow {
    Rational x;
    double real_density = 0;
    int omega_product = 1;
    double value = 0;
};

struct DiscretenessProfile {
    std::vector<DiscretenessRow> rows;
    bool suppressed = false;  // mixed state: no sharp lattice
    unsigned long cutoff = 0;
};

/// |psi_inf(x)|^2 prod_{p <= cutoff} Omega(|x|_p); x in units of l0.
/// Throws Unsupported for declared (non-Omega) finite factors.
DiscretenessProfile discreteness_profile(const AdelicState& state, const std::vector<Rational>& xs,
                                         unsigned long cutoff);

/// l0 = (h / (m w0))^{1/2}; only constant-frequency models carry it.
std::optional<double> length_scale(const OscillatorModel& model, const Rational& h);

/// chi_p(alpha_p (gamma(t) - gamma0)).
UnitPhase padic_dynamical_phase(const Rational& alpha, const Rational& gamma_t, const Rational& gamma0, Prime p);

}  // namespace padicosc
