#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "padicosc/series.hpp"

namespace padicosc {

/// omega^2(t) as a ratio of polynomials with rational coefficients.
///
/// The dynamics only ever see omega^2, so profiles whose omega is irrational
/// (the Example-2 family) stay inside exact arithmetic.
struct FrequencyProfile {
    std::vector<Rational> numerator{Rational(0)};
    std::vector<Rational> denominator{Rational(1)};
    std::string description = "free";
    /// Set for time-independent profiles whose omega itself is rational.
    std::optional<Rational> constant_omega;

    RationalSeries omega_squared(int order) const;

    /// omega(t) given by its power-series coefficients (squared exactly).
    static FrequencyProfile from_omega_coefficients(const std::vector<Rational>& omega);
};

/// Lagrangian m/2 (xdot^2 - omega^2(t) x^2) plus the amplitude initial data.
struct OscillatorModel {
    Rational mass{1};
    FrequencyProfile profile;
    Rational C{1};
    Rational G0{1};
    Rational Gdot0{0};
    std::string name = "free";
};

/// omega = b^-2 / (1+at)^2 with G0 = b, Gdot0 = ab; G = b(1+at), gamma = t/(b^2(1+at)).
OscillatorModel preset_example1(long a, long b);
/// omega^2 = b^-4 (1 + a^2 b^4/4) / (1+at)^2 with G0 = b, Gdot0 = ab/2; a, b positive even.
OscillatorModel preset_example2(long a, long b);
/// omega = w0 constant, C = w0, G = 1, gamma = w0 t.
OscillatorModel preset_constant(const Rational& w0);
/// omega = 0, G0 = 1, Gdot0 = 0, C = 1; G = (1+t^2)^{1/2}, gamma = arctan t.
OscillatorModel preset_free();

/// Parses "example1(a,b)", "example2(a,b)", "constant(w0)" or "free".
OscillatorModel parse_preset(const std::string& text);

/// Amplitude G and phase gamma solving G^3 G'' + omega^2 G^4 = C^2, gamma' G^2 = C, gamma(0) = 0.
struct AmplitudePhase {
    RationalSeries G;
    RationalSeries gamma;
    RationalSeries Gdot;
    RationalSeries gammadot;  // C / G^2
    Rational C{1};
    int order = 0;
};

AmplitudePhase solve_amplitude_phase(const OscillatorModel& model, int order = kDefaultOrder);

/// G^3 G'' + omega^2 G^4 - C^2 through order N-2 (all zero for a correct solve).
RationalSeries amplitude_residual(const OscillatorModel& model, const AmplitudePhase& ap);
/// gamma' G^2 - C through order N-1.
RationalSeries phase_residual(const AmplitudePhase& ap);

/// Two space-time points plus the amplitude/phase data evaluated there.
///
/// gammadot at the endpoints is taken as C/G^2 exactly, so the square root
/// sqrt(gammadot'' gammadot') is the rational C/(G' G'').
struct EndpointData {
    Rational x_prime, t_prime, x_dprime, t_dprime;
    Rational G_prime, G_dprime;
    Rational Gdot_prime, Gdot_dprime;
    Rational gamma_prime, gamma_dprime;
    Rational gammadot_prime, gammadot_dprime;
    Rational delta;  // gamma'' - gamma'
    TrigValues trig_delta;
    int min_trig_terms = kDefaultOrder;
};

/// Throws CausticError when gamma'' = gamma' or the amplitude vanishes at an endpoint.
EndpointData make_endpoints(const AmplitudePhase& ap, const Rational& x_prime, const Rational& t_prime,
                            const Rational& x_dprime, const Rational& t_dprime, int min_trig_terms = kDefaultOrder);

/// Certifies every series feeding the endpoint values, and the trig expansion of
/// gamma'' - gamma', at each place (0 = real). Throws DivergenceError.
void certify_endpoints(const AmplitudePhase& ap, const EndpointData& ep, const std::vector<Prime>& places);

/// sin/cos of a rational argument with the term count used everywhere for that argument.
/// Falls back to min_terms when no real accuracy is reachable.
TrigValues trig_at(const Rational& u, int min_terms);

/// Classical path through (x', t') and (x'', t'').
class Trajectory {
public:
    Trajectory(AmplitudePhase ap, EndpointData ep, Rational mass);

    /// x(t) = G(t) [c1 cos gamma(t) + c2 sin gamma(t)] as a formal series about t = 0.
    const RationalSeries& series() const;
    const Rational& c1() const { return c1_; }
    const Rational& c2() const { return c2_; }

    /// Endpoint form G/sin(delta) [x'/G' sin(gamma''-gamma) + x''/G'' sin(gamma-gamma')].
    Rational position(const Rational& t) const;
    /// m xdot(t) from the closed momentum formula.
    Rational momentum(const Rational& t) const;
    /// Closed momentum formula as a formal series about t = 0.
    RationalSeries momentum_series() const;

    const EndpointData& endpoints() const { return ep_; }

private:
    AmplitudePhase ap_;
    EndpointData ep_;
    Rational mass_;
    Rational c1_, c2_;
    TrigValues trig_gamma_prime_, trig_gamma_dprime_;
    // formal series built on first use (unsynchronized); endpoint evaluation never needs them
    mutable std::optional<RationalSeries> cos_gamma_, sin_gamma_, series_;
    void build_series() const;
};

Trajectory trajectory_endpoints(const AmplitudePhase& ap, const EndpointData& ep, const Rational& mass);

/// x'' + omega^2 x through order N-2.
RationalSeries motion_residual(const OscillatorModel& model, const RationalSeries& x);

struct PhasePoint {
    Rational x;
    Rational k;
};

/// Linear map (x0, k0) -> (x(t), k(t)) as the row-major 2x2 matrix {a, b, c, d}.
std::array<Rational, 4> evolution_matrix(const AmplitudePhase& ap, const Rational& mass, const Rational& t0,
                                         const Rational& t);
PhasePoint evolve_initial(const AmplitudePhase& ap, const Rational& mass, const Rational& x0, const Rational& k0,
                          const Rational& t0, const Rational& t);

/// Coefficients of the classical action A x''^2 + B x'' x' + D x'^2.
struct ActionCoefficients {
    Rational A, B, D;
    Rational operator()(const Rational& x_dprime, const Rational& x_prime) const {
        return A * x_dprime * x_dprime + B * x_dprime * x_prime + D * x_prime * x_prime;
    }
};

ActionCoefficients action_coefficients(const EndpointData& ep, const Rational& mass, const Rational& C);

/// Quadratic form of the action at the stored endpoints.
Rational classical_action(const EndpointData& ep, const Rational& mass, const Rational& C);

/// Boundary form m/2 (x'' xdot'' - x' xdot') from the trajectory momenta.
Rational classical_action_boundary(const Trajectory& trajectory, const Rational& mass);

}  // namespace padicosc
