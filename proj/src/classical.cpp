#include "padicosc/classical.hpp"

#include <regex>
#include <stdexcept>

#include "padicosc/errors.hpp"

namespace padicosc {

namespace {

Rational binomial_power(long n, long k, const Rational& a) {
    Integer c;
    mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(c) * pow(a, k);
}

std::vector<Rational> split_rationals(const std::string& args) {
    std::vector<Rational> out;
    if (args.empty()) return out;
    std::size_t start = 0;
    while (true) {
        auto comma = args.find(',', start);
        std::string piece = args.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        piece.erase(0, piece.find_first_not_of(' '));
        piece.erase(piece.find_last_not_of(' ') + 1);
        out.push_back(Rational::parse(piece));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

long as_long(const Rational& r, const char* what) {
    if (!r.is_integer() || !r.numerator().fits_slong_p())
        throw std::invalid_argument(std::string(what) + " must be an integer");
    return r.numerator().get_si();
}

}  // namespace

RationalSeries FrequencyProfile::omega_squared(int order) const {
    auto fit = [order](const std::vector<Rational>& c) {
        std::vector<Rational> v(c.begin(), c.begin() + std::min<std::size_t>(c.size(), order + 1));
        bool poly = c.size() <= static_cast<std::size_t>(order + 1);
        return RationalSeries(std::move(v), order, poly);
    };
    RationalSeries num = fit(numerator);
    if (denominator.size() == 1) return num * inverse(denominator[0]);
    return num * fit(denominator).inverse();
}

FrequencyProfile FrequencyProfile::from_omega_coefficients(const std::vector<Rational>& omega) {
    if (omega.empty()) throw std::invalid_argument("empty omega coefficients");
    FrequencyProfile f;
    f.numerator.assign(2 * omega.size() - 1, Rational(0));
    for (std::size_t i = 0; i < omega.size(); ++i)
        for (std::size_t j = 0; j < omega.size(); ++j) f.numerator[i + j] += omega[i] * omega[j];
    f.denominator = {Rational(1)};
    f.description = "omega polynomial";
    if (omega.size() == 1) f.constant_omega = omega[0];
    return f;
}

OscillatorModel preset_example1(long a, long b) {
    if (b == 0) throw std::invalid_argument("example1 needs b != 0");
    OscillatorModel m;
    Rational ra(a), rb(b);
    m.profile.numerator = {pow(rb, -4)};
    m.profile.denominator.clear();
    for (long k = 0; k <= 4; ++k) m.profile.denominator.push_back(binomial_power(4, k, ra));
    m.profile.description = "b^-4 (1+at)^-4";
    m.G0 = rb;
    m.Gdot0 = ra * rb;
    m.name = "example1(" + std::to_string(a) + "," + std::to_string(b) + ")";
    return m;
}

OscillatorModel preset_example2(long a, long b) {
    if (a <= 0 || b <= 0 || a % 2 != 0 || b % 2 != 0)
        throw std::invalid_argument("example2 needs positive even a and b");
    OscillatorModel m;
    Rational ra(a), rb(b);
    m.profile.numerator = {pow(rb, -4) * (Rational(1) + ra * ra * pow(rb, 4) / Rational(4))};
    m.profile.denominator = {Rational(1), Rational(2) * ra, ra * ra};
    m.profile.description = "b^-4 (1 + a^2 b^4/4) (1+at)^-2";
    m.G0 = rb;
    m.Gdot0 = ra * rb / Rational(2);
    m.name = "example2(" + std::to_string(a) + "," + std::to_string(b) + ")";
    return m;
}

OscillatorModel preset_constant(const Rational& w0) {
    if (w0.is_zero()) throw std::invalid_argument("constant frequency must be nonzero; use the free preset");
    OscillatorModel m;
    m.profile = FrequencyProfile::from_omega_coefficients({w0});
    m.profile.description = "constant";
    m.C = w0;
    m.name = "constant(" + w0.to_string() + ")";
    return m;
}

OscillatorModel preset_free() { return OscillatorModel{}; }

OscillatorModel parse_preset(const std::string& text) {
    static const std::regex form(R"(^\s*([a-z0-9]+)\s*(?:\((.*)\))?\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, form)) throw std::invalid_argument("malformed preset: '" + text + "'");
    std::string name = m[1];
    auto args = split_rationals(m[2]);
    if (name == "free" && args.empty()) return preset_free();
    if (name == "constant" && args.size() == 1) return preset_constant(args[0]);
    if (name == "example1" && args.size() == 2) return preset_example1(as_long(args[0], "a"), as_long(args[1], "b"));
    if (name == "example2" && args.size() == 2) return preset_example2(as_long(args[0], "a"), as_long(args[1], "b"));
    throw std::invalid_argument("unknown preset: '" + text + "'");
}

AmplitudePhase solve_amplitude_phase(const OscillatorModel& model, int order) {
    if (order < 2) throw std::invalid_argument("amplitude solve needs order >= 2");
    if (model.G0.is_zero()) throw std::invalid_argument("G0 must be nonzero");
    if (model.C.is_zero()) throw std::invalid_argument("C must be nonzero");
    const int N = order;
    RationalSeries W = model.profile.omega_squared(N);
    std::vector<Rational> g(N + 1), s2(N + 1), s3(N + 1), s4(N + 1);
    g[0] = model.G0;
    g[1] = model.Gdot0;
    Rational C2 = model.C * model.C;
    for (int n = 0; n + 2 <= N; ++n) {
        // powers of G through t^n depend on g_0..g_n only
        for (int i = 0; i <= n; ++i) s2[n] += g[i] * g[n - i];
        for (int i = 0; i <= n; ++i) s3[n] += g[i] * s2[n - i];
        for (int i = 0; i <= n; ++i) s4[n] += g[i] * s3[n - i];
        Rational rhs = n == 0 ? C2 : Rational(0);
        for (int k = 0; k <= n; ++k)
            if (!W[k].is_zero()) rhs -= W[k] * s4[n - k];
        for (int k = 1; k <= n; ++k)
            if (!s3[k].is_zero()) rhs -= s3[k] * Rational((n - k + 2) * (n - k + 1)) * g[n - k + 2];
        g[n + 2] = rhs / (s3[0] * Rational((n + 2) * (n + 1)));
    }
    AmplitudePhase ap;
    ap.order = N;
    ap.C = model.C;
    ap.G = RationalSeries(std::move(g), N);
    ap.Gdot = ap.G.derivative();
    ap.gammadot = (ap.G * ap.G).inverse() * model.C;
    ap.gamma = ap.gammadot.integral(Rational(0)).truncated(N);
    return ap;
}

RationalSeries amplitude_residual(const OscillatorModel& model, const AmplitudePhase& ap) {
    const int N = ap.order - 2;
    RationalSeries G = ap.G.truncated(N);
    RationalSeries G2 = G * G, G3 = G2 * G, G4 = G3 * G;
    RationalSeries Gdd = ap.G.derivative().derivative();
    return G3 * Gdd + model.profile.omega_squared(N) * G4 - RationalSeries::constant(ap.C * ap.C, N);
}

RationalSeries phase_residual(const AmplitudePhase& ap) {
    const int N = ap.order - 1;
    RationalSeries G = ap.G.truncated(N);
    return ap.gamma.derivative() * (G * G) - RationalSeries::constant(ap.C, N);
}

TrigValues trig_at(const Rational& u, int min_terms) {
    int terms = min_terms;
    try {
        terms = trig_terms_for(u, min_terms);
    } catch (const DivergenceError&) {
        // no real accuracy claim; certify_endpoints refuses the real place
    }
    return trig_rational(u, terms);
}

EndpointData make_endpoints(const AmplitudePhase& ap, const Rational& x_prime, const Rational& t_prime,
                            const Rational& x_dprime, const Rational& t_dprime, int min_trig_terms) {
    EndpointData ep;
    ep.x_prime = x_prime;
    ep.t_prime = t_prime;
    ep.x_dprime = x_dprime;
    ep.t_dprime = t_dprime;
    ep.min_trig_terms = min_trig_terms;
    ep.G_prime = ap.G.evaluate(t_prime);
    ep.G_dprime = ap.G.evaluate(t_dprime);
    if (ep.G_prime.is_zero() || ep.G_dprime.is_zero()) throw CausticError("amplitude G vanishes at an endpoint");
    ep.Gdot_prime = ap.Gdot.evaluate(t_prime);
    ep.Gdot_dprime = ap.Gdot.evaluate(t_dprime);
    ep.gamma_prime = ap.gamma.evaluate(t_prime);
    ep.gamma_dprime = ap.gamma.evaluate(t_dprime);
    ep.gammadot_prime = ap.C / (ep.G_prime * ep.G_prime);
    ep.gammadot_dprime = ap.C / (ep.G_dprime * ep.G_dprime);
    ep.delta = ep.gamma_dprime - ep.gamma_prime;
    if (ep.delta.is_zero()) throw CausticError("gamma'' = gamma': sin(delta) vanishes");
    ep.trig_delta = trig_at(ep.delta, min_trig_terms);
    if (ep.trig_delta.sin.is_zero()) throw CausticError("sin(gamma'' - gamma') vanishes");
    return ep;
}

void certify_endpoints(const AmplitudePhase& ap, const EndpointData& ep, const std::vector<Prime>& places) {
    for (const Rational* t : {&ep.t_prime, &ep.t_dprime}) {
        require_convergence(ap.G, places, *t, "G");
        require_convergence(ap.Gdot, places, *t, "Gdot");
        require_convergence(ap.gamma, places, *t, "gamma");
    }
    for (Prime p : places) {
        if (p == 0) {
            bool accurate = true;
            try {
                accurate = trig_terms_for(ep.delta, ep.min_trig_terms) <= ep.trig_delta.terms;
            } catch (const DivergenceError&) {
                accurate = false;
            }
            if (!accurate) throw DivergenceError("gamma'' - gamma' too large for real trigonometric evaluation");
            continue;
        }
        if (!trig_converges_padic(ep.delta, p))
            throw DivergenceError("sin/cos of gamma'' - gamma' = " + ep.delta.to_string() + " diverge at p=" +
                                  std::to_string(p));
    }
}

Trajectory::Trajectory(AmplitudePhase ap, EndpointData ep, Rational mass)
    : ap_(std::move(ap)), ep_(std::move(ep)), mass_(std::move(mass)) {
    trig_gamma_prime_ = trig_at(ep_.gamma_prime, ep_.min_trig_terms);
    trig_gamma_dprime_ = trig_at(ep_.gamma_dprime, ep_.min_trig_terms);
    const Rational& sd = ep_.trig_delta.sin;
    Rational u1 = ep_.x_prime / ep_.G_prime, u2 = ep_.x_dprime / ep_.G_dprime;
    c1_ = (u1 * trig_gamma_dprime_.sin - u2 * trig_gamma_prime_.sin) / sd;
    c2_ = (u2 * trig_gamma_prime_.cos - u1 * trig_gamma_dprime_.cos) / sd;
}

void Trajectory::build_series() const {
    if (series_) return;
    cos_gamma_ = series_cos(ap_.gamma);
    sin_gamma_ = series_sin(ap_.gamma);
    series_ = ap_.G * (*cos_gamma_ * c1_ + *sin_gamma_ * c2_);
}

const RationalSeries& Trajectory::series() const {
    build_series();
    return *series_;
}

Rational Trajectory::position(const Rational& t) const {
    Rational G = ap_.G.evaluate(t), g = ap_.gamma.evaluate(t);
    Rational s1 = trig_at(ep_.gamma_dprime - g, ep_.min_trig_terms).sin;
    Rational s2 = trig_at(g - ep_.gamma_prime, ep_.min_trig_terms).sin;
    return G / ep_.trig_delta.sin * (ep_.x_prime / ep_.G_prime * s1 + ep_.x_dprime / ep_.G_dprime * s2);
}

Rational Trajectory::momentum(const Rational& t) const {
    Rational G = ap_.G.evaluate(t), Gd = ap_.Gdot.evaluate(t), g = ap_.gamma.evaluate(t);
    Rational gd = ap_.C / (G * G);
    Rational c1 = trig_at(g - ep_.gamma_prime, ep_.min_trig_terms).cos;
    Rational c2 = trig_at(ep_.gamma_dprime - g, ep_.min_trig_terms).cos;
    Rational bracket = ep_.x_dprime / ep_.G_dprime * c1 - ep_.x_prime / ep_.G_prime * c2;
    return mass_ * (Gd / G * position(t) + G * gd / ep_.trig_delta.sin * bracket);
}

RationalSeries Trajectory::momentum_series() const {
    build_series();
    const int N = ap_.order - 1;
    RationalSeries G = ap_.G.truncated(N), x = series_->truncated(N);
    RationalSeries cg = cos_gamma_->truncated(N), sg = sin_gamma_->truncated(N);
    const auto& tp = trig_gamma_prime_;
    const auto& tdp = trig_gamma_dprime_;
    // cos(gamma - gamma') and cos(gamma'' - gamma) by the addition formulas
    RationalSeries c_from = cg * tp.cos + sg * tp.sin;
    RationalSeries c_to = cg * tdp.cos + sg * tdp.sin;
    RationalSeries bracket = c_from * (ep_.x_dprime / ep_.G_dprime) - c_to * (ep_.x_prime / ep_.G_prime);
    RationalSeries gd = ap_.gammadot.truncated(N);
    return (ap_.Gdot * G.inverse() * x + G * gd * bracket * inverse(ep_.trig_delta.sin)) * mass_;
}

Trajectory trajectory_endpoints(const AmplitudePhase& ap, const EndpointData& ep, const Rational& mass) {
    return Trajectory(ap, ep, mass);
}

RationalSeries motion_residual(const OscillatorModel& model, const RationalSeries& x) {
    const int N = x.order() - 2;
    return x.derivative().derivative() + model.profile.omega_squared(N) * x.truncated(N);
}

std::array<Rational, 4> evolution_matrix(const AmplitudePhase& ap, const Rational& mass, const Rational& t0,
                                         const Rational& t) {
    Rational G = ap.G.evaluate(t), Gd = ap.Gdot.evaluate(t);
    Rational G0 = ap.G.evaluate(t0), Gd0 = ap.Gdot.evaluate(t0);
    if (G.is_zero() || G0.is_zero()) throw CausticError("amplitude G vanishes");
    Rational gd = ap.C / (G * G);
    auto tr = trig_at(ap.gamma.evaluate(t) - ap.gamma.evaluate(t0), kDefaultOrder);
    const Rational &c = tr.cos, &s = tr.sin;
    const Rational& C = ap.C;
    Rational a = G / G0 * c - G * Gd0 / C * s;
    Rational b = G * G0 / (mass * C) * s;
    Rational cc = mass * ((Gd / G0 - G * gd * Gd0 / C) * c - (Gd * Gd0 / C + G * gd / G0) * s);
    Rational d = G0 / C * (G * gd * c + Gd * s);
    return {a, b, cc, d};
}

PhasePoint evolve_initial(const AmplitudePhase& ap, const Rational& mass, const Rational& x0, const Rational& k0,
                          const Rational& t0, const Rational& t) {
    auto M = evolution_matrix(ap, mass, t0, t);
    return {M[0] * x0 + M[1] * k0, M[2] * x0 + M[3] * k0};
}

ActionCoefficients action_coefficients(const EndpointData& ep, const Rational& mass, const Rational& C) {
    Rational cot = ep.trig_delta.cos / ep.trig_delta.sin;
    Rational half = mass / Rational(2);
    ActionCoefficients out;
    out.A = half * (ep.gammadot_dprime * cot + ep.Gdot_dprime / ep.G_dprime);
    out.B = -mass * C / (ep.G_prime * ep.G_dprime * ep.trig_delta.sin);
    out.D = half * (ep.gammadot_prime * cot - ep.Gdot_prime / ep.G_prime);
    return out;
}

Rational classical_action(const EndpointData& ep, const Rational& mass, const Rational& C) {
    return action_coefficients(ep, mass, C)(ep.x_dprime, ep.x_prime);
}

Rational classical_action_boundary(const Trajectory& trajectory, const Rational& mass) {
    (void)mass;
    const auto& ep = trajectory.endpoints();
    return (ep.x_dprime * trajectory.momentum(ep.t_dprime) - ep.x_prime * trajectory.momentum(ep.t_prime)) /
           Rational(2);
}

}  // namespace padicosc
