#include "pircon/io.hpp"

#include <fstream>
#include <map>

#include "pircon/error.hpp"

namespace pircon::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<std::string> strings(const Json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) bad(std::string(what) + " must contain strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

Json pairs_to_json(const IdPairs& pairs) {
  Json out = Json::object();
  for (const auto& [a, b] : pairs) out[a] = b;
  return out;
}

IdPairs pairs_from_json(const Json& j) {
  if (!j.is_object()) bad("expected an object of id pairs");
  IdPairs out;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_string()) bad("pair values must be strings");
    out.emplace_back(k, v.get<std::string>());
  }
  return out;
}

std::optional<Shape> shape_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  for (Shape s : {Shape::BallLike, Shape::SphereLike, Shape::Neither})
    if (j == std::string(to_string(s))) return s;
  bad("unknown shape " + j.dump());
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    bad(path.string() + ": " + e.what());
  }
}

Json to_json(const FinitePoset& p) {
  Json covers = Json::array();
  for (auto [a, b] : p.cover_pairs()) covers.push_back({p.id(a), p.id(b)});
  return {{"elements", p.ids()}, {"covers", covers}};
}

FinitePoset poset_from_json(const Json& j) {
  auto ids = strings(field(j, "elements"), "elements");
  IdPairs covers;
  const auto& cj = field(j, "covers");
  if (!cj.is_array()) bad("covers must be an array");
  for (const auto& c : cj) {
    if (!c.is_array() || c.size() != 2 || !c[0].is_string() || !c[1].is_string())
      bad("each cover must be a pair of ids");
    covers.emplace_back(c[0].get<std::string>(), c[1].get<std::string>());
  }
  return FinitePoset::from_covers(std::move(ids), covers);
}

Json to_json(const SimplicialComplex& c) {
  Json facets = Json::array();
  for (const auto& f : c.facets()) facets.push_back(c.named(f));
  return {{"facets", facets}};
}

SimplicialComplex complex_from_json(const Json& j) {
  const auto& fj = field(j, "facets");
  if (!fj.is_array()) bad("facets must be an array");
  std::vector<std::string> names;
  std::map<std::string, int> index;
  std::vector<Face> facets;
  for (const auto& f : fj) {
    Face face;
    for (const auto& v : strings(f, "facet")) {
      auto [it, fresh] = index.emplace(v, static_cast<int>(names.size()));
      if (fresh) names.push_back(v);
      face.push_back(it->second);
    }
    std::sort(face.begin(), face.end());
    if (std::adjacent_find(face.begin(), face.end()) != face.end()) bad("facet repeats a vertex");
    facets.push_back(std::move(face));
  }
  return SimplicialComplex::closure(std::move(names), facets);
}

Json to_json(const HomologyProfile& h) {
  return {{"first_dimension", HomologyProfile::first_dimension}, {"betti", h.betti}, {"torsion", h.torsion}};
}

ElemMap spm_from_json(const FinitePoset& p, const Json& j) {
  const Json& m = j.is_object() && j.contains("spm") ? j.at("spm") : j;
  ElemMap map(p.size(), static_cast<Elem>(-1));
  for (const auto& [x, mx] : pairs_from_json(m)) {
    auto a = p.find(x);
    auto b = p.find(mx);
    if (!a || !b) bad("SPM mentions an unknown element: " + (a ? mx : x));
    map[*a] = *b;
  }
  for (Elem x = 0; x < p.size(); ++x)
    if (map[x] == static_cast<Elem>(-1)) bad("SPM does not define M(" + p.id(x) + ")");
  return map;
}

Json spm_to_json(const FinitePoset& p, std::span<const Elem> map) {
  Json out = Json::object();
  for (Elem x = 0; x < p.size(); ++x) out[p.id(x)] = p.id(map[x]);
  return out;
}

Json to_json(const IdealCertificate& c) {
  return {{"ideal_top", c.ideal_top}, {"spm", pairs_to_json(c.spm)}, {"fixed_points", c.fixed_points}};
}

Json to_json(const PirconCertificate& c) {
  Json ideals = Json::array();
  for (const auto& entry : c.ideals) ideals.push_back(to_json(entry));
  Json out = {{"kind", "pircon-certificate"},
              {"mode", c.zircon_mode ? "zircon" : "pircon"},
              {"certified", c.certified},
              {"ideals", ideals}};
  out["failing_ideal"] = c.failing_ideal ? Json(*c.failing_ideal) : Json(nullptr);
  return out;
}

PirconCertificate pircon_certificate_from_json(const Json& j) {
  PirconCertificate c;
  const auto& mode = field(j, "mode");
  if (mode != "pircon" && mode != "zircon") bad("mode must be pircon or zircon");
  c.zircon_mode = mode == "zircon";
  if (!field(j, "certified").is_boolean()) bad("certified must be a boolean");
  c.certified = j.at("certified").get<bool>();
  for (const auto& e : field(j, "ideals")) {
    IdealCertificate entry;
    if (!field(e, "ideal_top").is_string()) bad("ideal_top must be a string");
    entry.ideal_top = e.at("ideal_top").get<std::string>();
    entry.spm = pairs_from_json(field(e, "spm"));
    entry.fixed_points = strings(field(e, "fixed_points"), "fixed_points");
    c.ideals.push_back(std::move(entry));
  }
  if (j.contains("failing_ideal") && j.at("failing_ideal").is_string())
    c.failing_ideal = j.at("failing_ideal").get<std::string>();
  return c;
}

Json to_json(const ConvertCertificate& c) {
  Json steps = Json::array();
  for (const auto& s : c.steps) {
    Json step = {{"kind", to_string(s.kind)}, {"target", s.target}, {"merged_id", s.merged_id},
                 {"members", s.members}, {"x", s.x}, {"y", s.y}, {"z", s.z}};
    step["witness"] = s.witness ? Json{{"coatom", s.witness->coatom}, {"phi", pairs_to_json(s.witness->phi)}}
                                : Json(nullptr);
    step["size_after"] = s.size_after;
    if (s.shape_before) step["shape_before"] = to_string(*s.shape_before);
    if (s.shape_after) step["shape_after"] = to_string(*s.shape_after);
    steps.push_back(std::move(step));
  }
  return {{"kind", "convert-certificate"},
          {"source", to_json(c.source)},
          {"spm_has_fixed_points", c.spm_has_fixed_points},
          {"steps", steps},
          {"final_bijection", pairs_to_json(c.final_bijection)}};
}

ConvertCertificate convert_certificate_from_json(const Json& j) {
  ConvertCertificate c;
  c.source = poset_from_json(field(j, "source"));
  if (!field(j, "spm_has_fixed_points").is_boolean()) bad("spm_has_fixed_points must be a boolean");
  c.spm_has_fixed_points = j.at("spm_has_fixed_points").get<bool>();
  for (const auto& sj : field(j, "steps")) {
    ConvertStep s;
    const auto& kind = field(sj, "kind");
    bool known = false;
    for (StepKind k : {StepKind::Trivial, StepKind::Removal, StepKind::CleanZipping})
      if (kind == std::string(to_string(k))) {
        s.kind = k;
        known = true;
      }
    if (!known) bad("unknown step kind " + kind.dump());
    auto text = [&](const char* key) {
      const auto& v = field(sj, key);
      if (!v.is_string()) bad(std::string(key) + " must be a string");
      return v.get<std::string>();
    };
    s.target = text("target");
    s.merged_id = text("merged_id");
    s.members = strings(field(sj, "members"), "members");
    s.x = text("x");
    s.y = text("y");
    s.z = text("z");
    if (const auto& w = field(sj, "witness"); !w.is_null()) {
      if (!field(w, "coatom").is_string()) bad("coatom must be a string");
      s.witness = CleanWitness{w.at("coatom").get<std::string>(), pairs_from_json(field(w, "phi"))};
    }
    if (!field(sj, "size_after").is_number_unsigned()) bad("size_after must be a count");
    s.size_after = sj.at("size_after").get<std::size_t>();
    if (sj.contains("shape_before")) s.shape_before = shape_from(sj.at("shape_before"));
    if (sj.contains("shape_after")) s.shape_after = shape_from(sj.at("shape_after"));
    c.steps.push_back(std::move(s));
  }
  c.final_bijection = pairs_from_json(field(j, "final_bijection"));
  return c;
}

CoxeterInput coxeter_input_from_json(const Json& j) {
  CoxeterInput in;
  const auto& type = field(j, "type");
  const auto& rank = field(j, "rank");
  if (!type.is_string() || !rank.is_number_integer()) bad("type must be a string and rank an integer");
  std::string text = type.get<std::string>() + std::to_string(rank.get<int>());
  if (j.contains("m")) {
    if (!j.at("m").is_number_integer()) bad("m must be an integer");
    text += "(" + std::to_string(j.at("m").get<int>()) + ")";
  }
  try {
    in.spec = parse_coxeter_type(text);
  } catch (const Error& e) {
    bad(e.what());
  }
  if (j.contains("theta")) {
    const int r = in.spec.rank;
    in.theta.assign(static_cast<std::size_t>(r), -1);
    auto gen = [&](const std::string& name) {
      for (int s = 0; s < r; ++s)
        if (name == "s" + std::to_string(s + 1)) return s;
      bad("unknown generator " + name);
    };
    for (const auto& [k, v] : pairs_from_json(j.at("theta"))) in.theta[static_cast<std::size_t>(gen(k))] = gen(v);
    for (int t : in.theta)
      if (t < 0) bad("theta must map every generator");
  }
  return in;
}

Json to_json(const ScaledWSet& x) {
  Json action = Json::object();
  for (int s = 0; s < x.generators(); ++s) {
    Json row = Json::array();
    for (Elem e = 0; e < x.size(); ++e) row.push_back(x.names[x.act(s, e)]);
    action["s" + std::to_string(s + 1)] = std::move(row);
  }
  return {{"elements", x.names}, {"heights", x.height}, {"action", action}};
}

}  // namespace pircon::io
