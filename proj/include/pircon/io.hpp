#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "pircon/coxeter.hpp"
#include "pircon/poset.hpp"
#include "pircon/quasiparabolic.hpp"
#include "pircon/simplicial.hpp"
#include "pircon/spm.hpp"
#include "pircon/transform.hpp"

namespace pircon::io {

using Json = nlohmann::ordered_json;

/// ParseError on unreadable files or malformed JSON.
Json read_json_file(const std::filesystem::path& path);

// {"elements": [...], "covers": [["a", "b"], ...]}
Json to_json(const FinitePoset& p);
FinitePoset poset_from_json(const Json& j);

// {"facets": [["v1", "v2"], ...]}
Json to_json(const SimplicialComplex& c);
SimplicialComplex complex_from_json(const Json& j);

Json to_json(const HomologyProfile& h);

/// Either {"spm": {"x": "M(x)", ...}} or the bare map.
ElemMap spm_from_json(const FinitePoset& p, const Json& j);
Json spm_to_json(const FinitePoset& p, std::span<const Elem> map);

Json to_json(const IdealCertificate& c);
Json to_json(const PirconCertificate& c);
PirconCertificate pircon_certificate_from_json(const Json& j);

Json to_json(const ConvertCertificate& c);
ConvertCertificate convert_certificate_from_json(const Json& j);

struct CoxeterInput {
  CoxeterSpec spec;
  std::vector<int> theta;  // empty: identity
};

// {"type": "A", "rank": 3, "theta": {"s1": "s3", ...}}, plus "m" for I2
CoxeterInput coxeter_input_from_json(const Json& j);

// {"elements": [...], "heights": [...], "action": {"s1": [...], ...}}
Json to_json(const ScaledWSet& x);

}  // namespace pircon::io
