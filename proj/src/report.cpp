#include "padicosc/report.hpp"

#include <set>
#include <stdexcept>

namespace padicosc {

namespace {

Rational rational_field(const Json& v, const std::string& key) {
    if (!v.is_string()) throw std::invalid_argument("field '" + key + "' must be a \"num/den\" string");
    return Rational::parse(v.get<std::string>());
}

void reject_unknown(const Json& j, const std::set<std::string>& allowed, const char* what) {
    if (!j.is_object()) throw std::invalid_argument(std::string(what) + " must be a JSON object");
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key)) throw std::invalid_argument(std::string("unknown field '") + key + "' in " + what);
}

std::string place_name(Prime p) { return p == 0 ? "real" : std::to_string(p); }

}  // namespace

Json to_json(const Rational& r) { return r.to_string(); }

Json to_json(const Complex& z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const UnitPhase& ph) { return Json{{"angle", to_json(ph.angle())}, {"value", to_json(ph.value())}}; }

Json envelope(const std::string& command, Json result) {
    Json j;
    j["schema"] = kSchema;
    j["command"] = command;
    j["result"] = std::move(result);
    return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json gauss_json(const GaussIntegralSpec& spec, const GaussResult& result) {
    Json j;
    j["p"] = spec.p;
    j["alpha"] = to_json(spec.alpha);
    j["beta"] = to_json(spec.beta);
    j["nu"] = spec.nu;
    j["branch"] = to_string(result.branch);
    const auto& m = result.exact.magnitude;
    j["magnitude"] = m.zero ? Json(nullptr) : Json{{"base", m.base}, {"twice_exponent", m.twice_exponent}};
    j["phase"] = to_json(result.exact.phase);
    j["lambda"] = to_json(result.exact.lambda_factor);
    j["value"] = to_json(result.value);
    return j;
}

Json kernel_json(const QuadraticKernel& k, const std::vector<std::pair<Rational, Rational>>& samples) {
    Json j;
    j["place"] = place_name(k.place);
    j["A"] = to_json(k.A);
    j["B"] = to_json(k.B);
    j["D"] = to_json(k.D);
    j["h"] = to_json(k.h);
    j["mass"] = to_json(k.mass);
    j["approx"] = Json{{"A", k.A.to_double()}, {"B", k.B.to_double()}, {"D", k.D.to_double()}};
    KernelValue origin = evaluate_kernel(k, Rational(0), Rational(0));
    j["lambda"] = to_json(origin.lambda_factor);
    j["norm"] = to_json(origin.norm);
    if (k.place == 0)
        j["norm_exponent"] = nullptr;
    else
        j["norm_exponent"] = -*padic_valuation(k.B / k.h, k.place);
    j["precision_valuation"] = k.precision_valuation ? Json(*k.precision_valuation) : Json(nullptr);
    Json rows = Json::array();
    for (const auto& [x2, x1] : samples) {
        KernelValue v = evaluate_kernel(k, x2, x1);
        rows.push_back(Json{{"x_dprime", to_json(x2)},
                            {"x_prime", to_json(x1)},
                            {"phase", to_json(v.phase.angle())},
                            {"modulus", v.modulus()},
                            {"value", to_json(v.value())}});
    }
    j["sample_values"] = std::move(rows);
    return j;
}

Json composition_json(const CompositionReport& rep) {
    return Json{{"p", rep.p},
                {"nu", rep.nu},
                {"depth", rep.depth},
                {"samples", rep.samples},
                {"max_deviation", rep.max_deviation}};
}

Json vacuum_json(const VacuumReport& rep) {
    Json j;
    j["p"] = rep.p;
    j["holds"] = rep.holds;
    j["requested_method"] = to_string(rep.requested);
    j["method"] = to_string(rep.method);
    j["witness"] = rep.witness ? to_json(*rep.witness) : Json(nullptr);
    j["max_deviation"] = rep.max_deviation;
    j["sufficient_condition"] = rep.sufficient_condition ? Json(*rep.sufficient_condition) : Json(nullptr);
    Json rows = Json::array();
    for (const auto& s : rep.samples)
        rows.push_back(Json{{"x_dprime", to_json(s.x_dprime)},
                            {"lhs", to_json(s.lhs)},
                            {"rhs", s.rhs},
                            {"deviation", s.deviation}});
    j["samples"] = std::move(rows);
    return j;
}

Json product_json(const RestrictedProduct& rep) {
    Json j;
    j["label"] = rep.label;
    Json places = Json::array();
    for (const auto& pk : rep.places) {
        Json e;
        e["place"] = place_name(pk.place);
        if (pk.error.empty()) {
            e["A"] = to_json(pk.kernel->A);
            e["B"] = to_json(pk.kernel->B);
            e["D"] = to_json(pk.kernel->D);
            e["approx"] = Json{{"A", pk.kernel->A.to_double()}, {"B", pk.kernel->B.to_double()}, {"D", pk.kernel->D.to_double()}};
            e["norm"] = to_json(pk.value->norm);
            e["phase"] = to_json(pk.value->phase.angle());
            e["lambda"] = to_json(pk.value->lambda_factor);
            e["value"] = to_json(pk.value->value());
        } else {
            e["error"] = pk.error;
        }
        places.push_back(std::move(e));
    }
    j["places"] = std::move(places);
    j["partial_product"] = rep.partial_product ? to_json(*rep.partial_product) : Json(nullptr);
    return j;
}

Json classical_json(const OscillatorModel& model, const AmplitudePhase& ap, const Trajectory& traj) {
    const auto& ep = traj.endpoints();
    auto series = [](const RationalSeries& s) {
        Json a = Json::array();
        for (const auto& c : s.coefficients()) a.push_back(to_json(c));
        return a;
    };
    Json j;
    j["model"] = model.name;
    j["order"] = ap.order;
    j["C"] = to_json(ap.C);
    j["G"] = series(ap.G);
    j["gamma"] = series(ap.gamma);
    j["trajectory"] = series(traj.series());
    j["endpoints"] = Json{{"t_prime", to_json(ep.t_prime)},
                          {"x_prime", to_json(ep.x_prime)},
                          {"t_dprime", to_json(ep.t_dprime)},
                          {"x_dprime", to_json(ep.x_dprime)},
                          {"delta", to_json(ep.delta)},
                          {"trig_terms", ep.trig_delta.terms}};
    j["momentum"] = Json{{"t_prime", to_json(traj.momentum(ep.t_prime))},
                         {"t_dprime", to_json(traj.momentum(ep.t_dprime))}};
    auto coeffs = action_coefficients(ep, model.mass, ap.C);
    Rational quadratic = coeffs(ep.x_dprime, ep.x_prime);
    Rational boundary = classical_action_boundary(traj, model.mass);
    j["action"] = Json{{"A", to_json(coeffs.A)},
                       {"B", to_json(coeffs.B)},
                       {"D", to_json(coeffs.D)},
                       {"quadratic_form", to_json(quadratic)},
                       {"boundary_form", to_json(boundary)},
                       {"delta", to_json(quadratic - boundary)},
                       {"approx", quadratic.to_double()}};
    return j;
}

Json discreteness_json(const DiscretenessProfile& prof) {
    Json rows = Json::array();
    for (const auto& r : prof.rows)
        rows.push_back(Json{{"x", to_json(r.x)},
                            {"real_density", r.real_density},
                            {"omega_product", r.omega_product},
                            {"value", r.value}});
    return Json{{"cutoff", prof.cutoff}, {"suppressed", prof.suppressed}, {"rows", std::move(rows)}};
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string discreteness_csv(const DiscretenessProfile& prof) {
    std::string out = "x,real_density,omega_product,value\r\n";
    for (const auto& r : prof.rows) {
        out += csv_field(r.x.to_string()) + "," + Json(r.real_density).dump() + "," + std::to_string(r.omega_product) +
               "," + Json(r.value).dump() + "\r\n";
    }
    return out;
}

Json adele_json(const Adele& a) {
    Json ex = Json::object();
    for (const auto& [p, x] : a.finite()) ex[std::to_string(p)] = to_json(x);
    Json S = Json::array();
    for (Prime p : a.exceptions()) S.push_back(p);
    return Json{{"real", to_json(a.real())}, {"exceptions", std::move(ex)}, {"S", std::move(S)}};
}

Adele adele_from_json(const Json& j) {
    reject_unknown(j, {"real", "exceptions", "S"}, "adele");
    Rational real = rational_field(j.at("real"), "real");
    std::map<Prime, Rational> finite;
    if (j.contains("exceptions")) {
        if (!j["exceptions"].is_object()) throw std::invalid_argument("adele exceptions must be an object");
        for (const auto& [key, value] : j["exceptions"].items()) {
            std::size_t used = 0;
            unsigned long p = std::stoul(key, &used);
            if (used != key.size()) throw std::invalid_argument("adele exception key '" + key + "' is not a prime");
            finite[p] = rational_field(value, "exceptions." + key);
        }
    }
    std::set<Prime> S;
    if (j.contains("S"))
        for (const auto& p : j["S"]) S.insert(p.get<Prime>());
    return Adele(real, std::move(finite), std::move(S));
}

OscillatorModel model_from_json(const Json& j) {
    reject_unknown(j, {"omega_coeffs", "mass", "C", "G0", "Gdot0", "name", "preset"}, "model");
    OscillatorModel m;
    if (j.contains("preset")) {
        if (j.contains("omega_coeffs")) throw std::invalid_argument("give either preset or omega_coeffs");
        m = parse_preset(j["preset"].get<std::string>());
    } else {
        if (!j.contains("omega_coeffs") || !j["omega_coeffs"].is_array() || j["omega_coeffs"].empty())
            throw std::invalid_argument("model needs a nonempty omega_coeffs array");
        std::vector<Rational> w;
        for (const auto& c : j["omega_coeffs"]) w.push_back(rational_field(c, "omega_coeffs"));
        m.profile = FrequencyProfile::from_omega_coefficients(w);
        m.name = "omega_coeffs";
    }
    if (j.contains("mass")) m.mass = rational_field(j["mass"], "mass");
    if (j.contains("C")) m.C = rational_field(j["C"], "C");
    if (j.contains("G0")) m.G0 = rational_field(j["G0"], "G0");
    if (j.contains("Gdot0")) m.Gdot0 = rational_field(j["Gdot0"], "Gdot0");
    if (j.contains("name")) m.name = j["name"].get<std::string>();
    return m;
}

}  // namespace padicosc
