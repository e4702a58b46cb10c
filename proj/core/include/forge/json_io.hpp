#pragma once

#include <nlohmann/json.hpp>

#include "forge/bridge.hpp"
#include "forge/certificate.hpp"
#include "forge/engine.hpp"

namespace forge {

using Json = nlohmann::json;

/// Integers are written as JSON numbers, other rationals as "a/b" strings; both forms
/// are accepted on input.
Json rational_to_json(Rational const& r);
Rational rational_from_json(Json const& j);

Json spec_to_json(DistanceSpec const& spec);
DistanceSpec spec_from_json(Json const& j);

/// {"spec": {...}, "points": [...], "dist": [[...], ...]}; "distances" is read too
Json space_to_json(FiniteMetricSpace const& space);
FiniteMetricSpace space_from_json(Json const& j);

Json map_to_json(KatetovMap const& f);
KatetovMap map_from_json(Json const& j);

/// kinds: "constant", "table", "nearest", "hash_random"
Json coloring_to_json(ColoringOracle const& c);
ColoringOracle coloring_from_json(Json const& j);
std::string coloring_family(ColoringOracle const& c);

inline constexpr int kCertificateSchema = 1;
Json certificate_to_json(Certificate const& c);
Certificate certificate_from_json(Json const& j);

Json report_to_json(VerificationReport const& r);
Json audit_to_json(AuditReport const& r);
Json validation_to_json(ValidationReport const& r);
Json trace_to_json(TraceNode const& t);
Json stats_to_json(EngineStats const& s, AmbientStats const& a);

Json engine_config_to_json(EngineConfig const& c);
/// Missing fields keep their defaults.
EngineConfig engine_config_from_json(Json const& j, EngineConfig base = {});

Json eps_report_to_json(EpsMonoReport const& r);

}  // namespace forge
