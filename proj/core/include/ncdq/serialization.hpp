#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "ncdq/cstar_field.hpp"
#include "ncdq/integral_oracle.hpp"

namespace ncdq {

using nlohmann::json;

// FourierElement <-> { "dim": n, "terms": [ { "k": [...], "re": x, "im": y }, ... ] },
// terms sorted lexicographically by k (the storage order).
json to_json(const FourierElement& a);
FourierElement element_from_json(const json& j);

// DeformationData <-> { "n": int, "theta": [[..]], "g": [[..]], "hbar": float }.
// The frame is derived, never serialized.
json to_json(const DeformationData& data);
DeformationData deformation_from_json(const json& j);

// MomentState <-> { "kind": "point"|"haar"|"mixture", "x": [..], "weights": [..],
//                   "components": [..] }.
json to_json(const MomentState& s);
MomentState state_from_json(const json& j);

json to_json(const Profile& p);
Profile profile_from_json(const json& j);
json to_json(const Section& s);
Section section_from_json(const json& j);

// NormBracket <-> { "lower": f, "upper": f, "N": int }.
json to_json(const NormBracket& b);

// VerificationReport -> { "check": ..., "cases": [...], "pass": bool } plus
// version and twist-convention stamps.
json to_json(const VerificationReport& r);

json quadrature_to_json(const QuadratureConfig& cfg);
QuadratureConfig quadrature_from_json(const json& j);

json read_json_file(const std::string& path);          // throws IoError / ConfigError
void write_text_file(const std::string& path, const std::string& text);  // throws IoError

}  // namespace ncdq
