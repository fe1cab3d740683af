#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "padicosc/adelic.hpp"

namespace padicosc {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "padic-oscillator/1";

Json to_json(const Rational& r);
Json to_json(const Complex& z);
Json to_json(const UnitPhase& ph);

/// {"schema", "command", "result"}.
Json envelope(const std::string& command, Json result);
std::string dump(const Json& j);

Json gauss_json(const GaussIntegralSpec& spec, const GaussResult& result);

Json kernel_json(const QuadraticKernel& k, const std::vector<std::pair<Rational, Rational>>& samples);
Json composition_json(const CompositionReport& rep);
Json vacuum_json(const VacuumReport& rep);
Json product_json(const RestrictedProduct& rep);

Json classical_json(const OscillatorModel& model, const AmplitudePhase& ap, const Trajectory& traj);

Json discreteness_json(const DiscretenessProfile& prof);
/// RFC 4180 table: x,real_density,omega_product,value.
std::string discreteness_csv(const DiscretenessProfile& prof);
std::string csv_field(const std::string& s);

Json adele_json(const Adele& a);
/// {real, exceptions: {p: "num/den"}, S: [...]}; unknown fields are rejected.
Adele adele_from_json(const Json& j);

/// {omega_coeffs: ["num/den", ...]} with optional mass, C, G0, Gdot0, name; unknown fields are rejected.
OscillatorModel model_from_json(const Json& j);

}  // namespace padicosc
