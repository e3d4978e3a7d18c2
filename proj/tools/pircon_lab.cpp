#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "pircon/coxeter.hpp"
#include "pircon/error.hpp"
#include "pircon/io.hpp"
#include "pircon/poset.hpp"
#include "pircon/quasiparabolic.hpp"
#include "pircon/simplicial.hpp"
#include "pircon/spm.hpp"
#include "pircon/transform.hpp"

using namespace pircon;
using io::Json;

namespace {

constexpr const char* kSchema = "pircon-lab/1";
constexpr const char* kVersion = "0.1.0";

enum Exit { kAsPredicted = 0, kViolation = 1, kUsage = 2 };

struct Settings {
  std::string format = "json";
  unsigned jobs = 0;
  bool timing = false;
  std::string out;
  std::size_t max_elements = 64;
  std::size_t max_order = CoxeterGroup::default_max_order;
};

std::size_t env_cap(std::size_t fallback) {
  const char* v = std::getenv("PIRCONLAB_MAX_ELEMENTS");
  if (!v || !*v) return fallback;
  try {
    std::size_t used = 0;
    const auto n = std::stoul(v, &used);
    if (used == std::string(v).size() && n > 0) return n;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::InvalidArgument, "PIRCONLAB_MAX_ELEMENTS must be a positive integer");
}

// Runs f(0..n-1) on up to `jobs` threads; results land at their own index, so
// the merge order never depends on scheduling. The first failing index wins.
template <class T, class F>
std::vector<T> run_pool(std::size_t n, unsigned jobs, F&& f) {
  std::vector<std::optional<T>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        slots[i].emplace(f(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned count = static_cast<unsigned>(std::min<std::size_t>(n, jobs ? jobs : std::min(hw, 8u)));
  if (count <= 1) {
    worker();
  } else {
    std::vector<std::jthread> threads;
    for (unsigned t = 0; t < count; ++t) threads.emplace_back(worker);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<T> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

// ---------------------------------------------------------------------------
// Inputs

struct GroupArgs {
  std::string poset_file;
  std::string group;
  std::string coxeter_file;
  std::string theta;
  bool flip = false;
  std::string ideal;
};

void add_source_options(CLI::App* cmd, GroupArgs& a, bool poset_allowed = true) {
  if (poset_allowed) cmd->add_option("--poset", a.poset_file, "poset JSON file")->check(CLI::ExistingFile);
  cmd->add_option("--group", a.group, "Coxeter type such as A3, B2, D4, I2(5)");
  cmd->add_option("--coxeter", a.coxeter_file, "Coxeter JSON file with optional theta")->check(CLI::ExistingFile);
  cmd->add_option("--theta", a.theta, "diagram automorphism, e.g. s1=s3,s3=s1");
  cmd->add_flag("--flip", a.flip, "type A flip s_i <-> s_{n+1-i}");
  cmd->add_option("--ideal", a.ideal, "restrict to the principal ideal below this element");
}

struct Source {
  FinitePoset poset;
  Json inputs = Json::object();
  std::unique_ptr<CoxeterGroup> group;
  std::optional<DiagramAutomorphism> theta;
  std::optional<TwistedSets> sets;
  std::vector<GElem> gelem;  // group element behind each poset element
};

std::vector<int> parse_theta(const CoxeterGroup& w, const std::string& text) {
  std::vector<int> images(static_cast<std::size_t>(w.rank()));
  for (int s = 0; s < w.rank(); ++s) images[static_cast<std::size_t>(s)] = s;
  auto gen = [&](const std::string& name) {
    for (int s = 0; s < w.rank(); ++s)
      if (name == w.generator_name(s)) return s;
    throw Error(ErrorKind::ParseError, "unknown generator '" + name + "' in --theta");
  };
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::ParseError, "--theta entries look like s1=s3");
    images[static_cast<std::size_t>(gen(item.substr(0, eq)))] = gen(item.substr(eq + 1));
  }
  return images;
}

void load_group(Source& src, const GroupArgs& a, const Settings& st) {
  std::vector<int> images;
  if (!a.coxeter_file.empty()) {
    auto in = io::coxeter_input_from_json(io::read_json_file(a.coxeter_file));
    src.group = std::make_unique<CoxeterGroup>(CoxeterGroup::build(in.spec, st.max_order));
    images = in.theta;
    src.inputs["coxeter"] = a.coxeter_file;
  } else {
    src.group = std::make_unique<CoxeterGroup>(CoxeterGroup::build(parse_coxeter_type(a.group), st.max_order));
  }
  const auto& w = *src.group;
  src.inputs["group"] = to_string(w.spec());
  if (a.flip) {
    if (w.spec().type != CoxeterType::A) throw Error(ErrorKind::InvalidArgument, "--flip needs type A");
    src.theta = type_a_flip(w);
  } else if (!a.theta.empty()) {
    src.theta = DiagramAutomorphism(w, parse_theta(w, a.theta));
  } else if (!images.empty()) {
    src.theta = DiagramAutomorphism(w, images);
  }
  if (src.theta) {
    Json th = Json::object();
    for (int s = 0; s < w.rank(); ++s) th[w.generator_name(s)] = w.generator_name((*src.theta)(s));
    src.inputs["theta"] = th;
  }
}

std::size_t check_cap(std::size_t size, const Settings& st) {
  if (size > st.max_elements)
    throw Error(ErrorKind::SizeLimitExceeded, std::to_string(size) + " elements, cap is " +
                                                  std::to_string(st.max_elements) +
                                                  " (raise with PIRCONLAB_MAX_ELEMENTS)");
  return size;
}

/// A poset from a file, Br(W), or Br(iota(theta)) when a theta is given.
Source load_source(const GroupArgs& a, const Settings& st) {
  const int given = !a.poset_file.empty() + !a.group.empty() + !a.coxeter_file.empty();
  if (given != 1) throw CLI::ValidationError("exactly one of --poset, --group, --coxeter is required");
  Source src;
  if (!a.poset_file.empty()) {
    if (a.flip || !a.theta.empty()) throw CLI::ValidationError("--theta and --flip need a group");
    src.poset = io::poset_from_json(io::read_json_file(a.poset_file));
    src.inputs["poset"] = a.poset_file;
  } else {
    load_group(src, a, st);
    const auto& w = *src.group;
    if (src.theta) {
      src.sets = twisted_sets(w, *src.theta);
      src.poset = src.sets->br_identities;
      src.gelem = src.sets->identities;
    } else {
      src.poset = w.bruhat_poset();
      for (GElem g = 0; g < w.order(); ++g) src.gelem.push_back(g);
    }
  }
  if (!a.ideal.empty()) {
    auto top = src.poset.find(a.ideal);
    if (!top) throw Error(ErrorKind::UnknownId, "--ideal " + a.ideal);
    auto sub = principal_ideal(src.poset, *top);
    std::vector<GElem> g;
    for (Elem e : sub.members)
      if (!src.gelem.empty()) g.push_back(src.gelem[e]);
    src.poset = std::move(sub.poset);
    src.gelem = std::move(g);
    src.inputs["ideal"] = a.ideal;
  }
  check_cap(src.poset.size(), st);
  return src;
}

// ---------------------------------------------------------------------------
// Output

Json report(const std::string& command, const Json& inputs) {
  return {{"schema", kSchema}, {"command", command}, {"inputs", inputs}, {"versions", {{"pircon-lab", kVersion}}}};
}

std::string cell(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

void emit(const Json& r, const Settings& st) {
  std::ostringstream text;
  if (st.format == "tsv") {
    if (!r.contains("items") || !r["items"].is_array())
      throw Error(ErrorKind::InvalidArgument, "this command has no table; use --format json");
    const auto& items = r["items"];
    std::vector<std::string> cols;
    for (const auto& it : items)
      for (const auto& [k, v] : it.items())
        if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
    for (std::size_t i = 0; i < cols.size(); ++i) text << (i ? "\t" : "") << cols[i];
    text << '\n';
    for (const auto& it : items) {
      for (std::size_t i = 0; i < cols.size(); ++i) text << (i ? "\t" : "") << (it.contains(cols[i]) ? cell(it[cols[i]]) : "");
      text << '\n';
    }
  } else {
    text << r.dump(2) << '\n';
  }
  if (st.out.empty()) {
    std::cout << text.str();
  } else {
    std::ofstream f(st.out);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + st.out);
    f << text.str();
  }
}

std::vector<std::string> ids_of(const FinitePoset& p, const std::vector<Elem>& elems) {
  std::vector<std::string> out;
  for (Elem e : elems) out.push_back(p.id(e));
  return out;
}

std::optional<int> rank_gap(const std::optional<std::vector<int>>& rk, Elem x, Elem y) {
  if (!rk) return std::nullopt;
  return (*rk)[y] - (*rk)[x];
}

// ---------------------------------------------------------------------------
// Commands

int cmd_classify(const GroupArgs& a, const Settings& st) {
  auto src = load_source(a, st);
  const auto& p = src.poset;
  const auto rk = rank_function(p);
  std::vector<std::pair<Elem, Elem>> pairs;
  for (Elem x = 0; x < p.size(); ++x)
    for (Elem y = 0; y < p.size(); ++y)
      if (p.lt(x, y)) pairs.emplace_back(x, y);

  struct Row {
    Shape shape;
    int dim;
    std::optional<bool> full;
  };
  auto rows = run_pool<Row>(pairs.size(), st.jobs, [&](std::size_t i) {
    auto [x, y] = pairs[i];
    auto complex = order_complex(open_interval(p, x, y).poset);
    const auto gap = rank_gap(rk, x, y);
    const int dim = gap ? *gap - 2 : complex.dimension();
    Row row{classify_ball_or_sphere(complex, dim), dim, std::nullopt};
    if (src.sets) row.full = full_interval_check(*src.group, *src.sets, src.gelem[x], src.gelem[y]);
    return row;
  });

  const bool pircon = is_pircon(p, st.max_elements).certified;
  std::size_t balls = 0, spheres = 0, neither = 0, full_mismatch = 0;
  Json items = Json::array();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& row = rows[i];
    Json it{{"lower", p.id(pairs[i].first)}, {"upper", p.id(pairs[i].second)}, {"dimension", row.dim},
            {"shape", to_string(row.shape)}};
    balls += row.shape == Shape::BallLike;
    spheres += row.shape == Shape::SphereLike;
    neither += row.shape == Shape::Neither;
    if (row.full) {
      it["full"] = *row.full;
      full_mismatch += *row.full != (row.shape == Shape::SphereLike);
    }
    items.push_back(std::move(it));
  }
  auto r = report("classify-intervals", src.inputs);
  r["summary"] = {{"intervals", pairs.size()}, {"ball_like", balls}, {"sphere_like", spheres}, {"neither", neither},
                  {"pircon", pircon}};
  if (src.sets) r["summary"]["full_mismatches"] = full_mismatch;
  r["items"] = std::move(items);
  emit(r, st);
  return (pircon && neither > 0) || full_mismatch > 0 ? kViolation : kAsPredicted;
}

SpmProvider twisted_provider(const Source& src) {
  return [&src](Elem top, const Subposet& ideal) -> std::optional<ElemMap> {
    const auto& w = *src.group;
    const GElem g = src.gelem[top];
    for (int s = 0; s < w.rank(); ++s) {
      if (!w.is_right_descent(g, s)) continue;
      try {
        auto spm = spm_twisted(w, *src.theta, *src.sets, g, s);
        if (!verify_spm(spm.ideal.poset, spm.map).valid()) continue;
        // re-index from the twisted ideal to the provider's ideal by id
        ElemMap m(ideal.poset.size());
        for (Elem e = 0; e < spm.ideal.poset.size(); ++e)
          m[ideal.poset.index(spm.ideal.poset.id(e))] = ideal.poset.index(spm.ideal.poset.id(spm.map[e]));
        return m;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotInIdealClosure) throw;
      }
    }
    return std::nullopt;
  };
}

int cmd_certify(const GroupArgs& a, const std::string& mode, const std::string& provider, const Settings& st) {
  auto src = load_source(a, st);
  const bool zircon = mode == "zircon";
  PirconCertificate cert;
  if (provider == "twisted") {
    if (!src.sets) throw CLI::ValidationError("--provider twisted needs a group with --theta or --flip");
    if (!a.ideal.empty()) throw CLI::ValidationError("--provider twisted works on the whole of Br(iota)");
    cert = certify_with(src.poset, zircon, twisted_provider(src));
  } else {
    cert = zircon ? is_zircon(src.poset, st.max_elements) : is_pircon(src.poset, st.max_elements);
  }
  auto r = report("certify", src.inputs);
  r["inputs"]["mode"] = mode;
  r["inputs"]["provider"] = provider;
  r["certificate"] = io::to_json(cert);
  r["certificate"]["poset"] = io::to_json(src.poset);
  Json items = Json::array();
  for (const auto& ideal : cert.ideals)
    items.push_back({{"ideal_top", ideal.ideal_top}, {"fixed_points", ideal.fixed_points.size()}, {"verified", true}});
  if (cert.failing_ideal) items.push_back({{"ideal_top", *cert.failing_ideal}, {"fixed_points", nullptr}, {"verified", false}});
  r["items"] = std::move(items);
  emit(r, st);
  return cert.certified ? kAsPredicted : kViolation;
}

int cmd_convert(const GroupArgs& a, const std::string& spm_file, bool shadow, const Settings& st) {
  auto src = load_source(a, st);
  ElemMap m;
  if (spm_file.empty()) {
    SpmSearchOptions opts;
    opts.max_elements = st.max_elements;
    auto found = find_spms(src.poset, opts);
    if (found.empty()) throw Error(ErrorKind::SpmInvalid, "the poset has no SPM to convert");
    m = found.front();
  } else {
    m = io::spm_from_json(src.poset, io::read_json_file(spm_file));
    src.inputs["spm"] = spm_file;
  }
  ConvertOptions opts;
  opts.homology_shadow = shadow;
  auto cert = convert_sequence(src.poset, m, opts);
  const auto check = verify_convert_certificate(src.poset, cert);
  auto r = report("convert", src.inputs);
  r["spm"] = io::spm_to_json(src.poset, m);
  r["summary"] = {{"steps", cert.steps.size()},
                  {"clean_zippings", cert.count(StepKind::CleanZipping)},
                  {"removals", cert.count(StepKind::Removal)},
                  {"trivial", cert.count(StepKind::Trivial)},
                  {"final_isomorphism", check.ok}};
  r["certificate"] = io::to_json(cert);
  Json items = Json::array();
  for (const auto& s : cert.steps)
    items.push_back({{"kind", to_string(s.kind)}, {"target", s.target}, {"members", s.members.size()},
                     {"size_after", s.size_after}});
  r["items"] = std::move(items);
  emit(r, st);
  return check.ok ? kAsPredicted : kViolation;
}

int cmd_verify_certificate(const GroupArgs& a, const std::string& file, const Settings& st) {
  Json j = io::read_json_file(file);
  if (j.contains("schema") && j.contains("certificate")) j = j["certificate"];
  const std::string kind = j.value("kind", "");
  Json r = report("verify-certificate", {{"certificate", file}});
  bool ok = false;
  if (kind == "pircon-certificate") {
    FinitePoset p;
    if (!a.poset_file.empty() || !a.group.empty() || !a.coxeter_file.empty()) {
      auto src = load_source(a, st);
      p = std::move(src.poset);
      r["inputs"].update(src.inputs);
    } else if (j.contains("poset")) {
      p = io::poset_from_json(j["poset"]);
    } else {
      throw CLI::ValidationError("this certificate carries no poset; pass --poset or --group");
    }
    const auto cert = io::pircon_certificate_from_json(j);
    ok = cert.certified ? verify_certificate(p, cert) : verify_failure_certificate(p, cert, st.max_elements);
    // a replayed failure certificate is still a violation of the pircon property
    r["verdict"] = {{"kind", kind}, {"ok", ok}, {"claims_certified", cert.certified}};
    if (ok && !cert.certified) {
      r["verdict"]["failing_ideal"] = *cert.failing_ideal;
      emit(r, st);
      return kViolation;
    }
  } else if (kind == "convert-certificate") {
    auto src = load_source(a, st);
    r["inputs"].update(src.inputs);
    const auto check = verify_convert_certificate(src.poset, io::convert_certificate_from_json(j));
    ok = check.ok;
    r["verdict"] = {{"kind", kind}, {"ok", ok}, {"failures", check.failures}};
  } else {
    throw Error(ErrorKind::ParseError, "unknown certificate kind '" + kind + "'");
  }
  emit(r, st);
  return ok ? kAsPredicted : kViolation;
}

int cmd_counterexample_a4(const Settings& st) {
  const auto w = CoxeterGroup::build(parse_coxeter_type("A4"), st.max_order);
  const auto theta = type_a_flip(w);
  const auto sets = twisted_sets(w, theta);
  const GElem top = *w.parse("s2s1s3s2s4s3");
  Json r = report("counterexample-a4", {{"group", "A4"}, {"theta", {{"s1", "s4"}, {"s2", "s3"}, {"s3", "s2"}, {"s4", "s1"}}},
                                        {"w", w.name(top)}});

  const auto nof = nof_check(w, theta);
  Json nof_failures = Json::array();
  bool s2_order3 = false;
  for (const auto& f : nof.failures) {
    nof_failures.push_back({{"s", w.generator_name(f.s)}, {"theta_s", w.generator_name(f.theta_s)},
                            {"witness", w.generator_name(f.s) + w.generator_name(f.theta_s)}, {"order", f.order}});
    s2_order3 |= f.s == 1 && f.theta_s == 2 && f.order == 3;
  }

  const auto inv = principal_ideal(sets.br_involutions, *sets.involution_index(top));
  const auto cube = make_boolean_lattice(3);
  const auto inv_iso = is_isomorphic(inv.poset, cube);

  const auto ide = principal_ideal(sets.br_identities, *sets.identity_index(top));
  const GElem missing = *w.parse("s2s3s2");
  std::vector<Elem> keep;
  for (Elem e = 0; e < cube.size(); ++e)
    if (cube.id(e) != "{12}") keep.push_back(e);
  const auto ide_iso = is_isomorphic(ide.poset, cube.induced(keep));
  const bool missing_ok = !sets.is_identity(missing) && sets.involution_index(missing) &&
                          inv.local(*sets.involution_index(missing));

  SpmSearchOptions all;
  all.limit = 0;
  all.max_elements = st.max_elements;
  const auto spms = find_spms(ide.poset, all);

  const bool a = !nof.holds && s2_order3, b = inv.poset.size() == 8 && inv_iso,
             c = ide.poset.size() == 7 && ide_iso && missing_ok, d = spms.empty();
  r["verdicts"] = Json::array({
      {{"claim", "NOF fails at s2 with s2s3 of order 3"}, {"holds", a}, {"failures", nof_failures}},
      {{"claim", "Br(I(theta)) below w is B3"}, {"holds", b}, {"size", inv.poset.size()}},
      {{"claim", "Br(iota(theta)) below w is B3 minus s2s3s2"},
       {"holds", c},
       {"size", ide.poset.size()},
       {"missing", w.name(missing)},
       {"ideal", io::to_json(ide.poset)}},
      {{"claim", "no SPM on Br(iota(theta)) below w"}, {"holds", d}, {"spms_found", spms.size()}},
  });
  r["items"] = Json::array();
  for (const auto& v : r["verdicts"]) r["items"].push_back({{"claim", v["claim"]}, {"holds", v["holds"]}});
  emit(r, st);
  return a && b && c && d ? kAsPredicted : kViolation;
}

int cmd_collapse_demo(const GroupArgs& a, const Settings& st) {
  auto src = load_source(a, st);
  const auto mu = morse_matching_mu(src.poset);
  const bool complete = mu.matching.complete();
  const bool acyclic = verify_acyclic(mu.complex, mu.matching);
  const auto homology = reduced_homology(mu.complex);
  auto face_ids = [&](std::size_t i) {
    std::vector<std::string> out;
    for (int v : mu.complex.faces()[i]) out.push_back(mu.complex.vertex_names()[static_cast<std::size_t>(v)]);
    return out;
  };
  Json items = Json::array();
  bool collapsed = false;
  std::string failure;
  try {
    for (const auto& c : collapse_to_void(mu.complex, mu.matching))
      items.push_back({{"free_face", face_ids(c.free_face)}, {"coface", face_ids(c.coface)}});
    collapsed = true;
  } catch (const Error& e) {
    failure = e.what();
  }
  auto r = report("collapse-demo", src.inputs);
  r["summary"] = {{"q_elements", mu.q.size()},
                  {"faces", mu.complex.face_count()},
                  {"critical_faces", mu.matching.critical_count()},
                  {"complete", complete},
                  {"acyclic", acyclic},
                  {"collapses_to_void", collapsed},
                  {"homology", io::to_json(homology)},
                  {"homology_trivial", homology.is_trivial()}};
  if (!failure.empty()) r["summary"]["failure"] = failure;
  r["items"] = std::move(items);
  emit(r, st);
  return complete && acyclic && collapsed && homology.is_trivial() ? kAsPredicted : kViolation;
}

std::vector<int> parse_j(const CoxeterGroup& w, const std::string& text) {
  std::vector<int> j;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    if (item.empty()) continue;
    bool found = false;
    for (int s = 0; s < w.rank(); ++s)
      if (item == w.generator_name(s)) {
        j.push_back(s);
        found = true;
      }
    if (!found) throw Error(ErrorKind::ParseError, "unknown generator '" + item + "' in --J");
  }
  std::sort(j.begin(), j.end());
  j.erase(std::unique(j.begin(), j.end()), j.end());
  return j;
}

int cmd_qp(const std::string& group, const std::string& j_text, const Settings& st) {
  const auto w = CoxeterGroup::build(parse_coxeter_type(group), st.max_order);
  const auto j = parse_j(w, j_text);
  std::vector<std::string> j_names;
  for (int s : j) j_names.push_back(w.generator_name(s));
  auto r = report("qp", {{"group", to_string(w.spec())}, {"J", j_names}});

  const auto x = parabolic_quotient(w, j);
  check_cap(x.size(), st);
  const auto verdict = verify_quasiparabolic(w, x);
  Json violations = Json::array();
  for (const auto& v : verdict.violations) {
    Json o{{"check", to_string(v.check)}, {"x", x.names[v.x]}};
    if (v.t) o["t"] = w.name(*v.t);
    if (v.s) o["s"] = w.generator_name(*v.s);
    if (v.s2) o["s2"] = w.generator_name(*v.s2);
    violations.push_back(std::move(o));
  }
  r["wset"] = io::to_json(x);
  r["quasiparabolic"] = {{"holds", verdict.holds()}, {"violations", violations}};
  if (!verdict.holds()) {
    emit(r, st);
    return kViolation;
  }

  const Elem x0 = w_minimal_elements(x).front();
  const auto br = qp_bruhat(x, x0);
  const auto reps = minimal_representatives(w, j);
  std::size_t order_mismatch = 0;
  for (Elem a = 0; a < br.poset.size(); ++a)
    for (Elem b = 0; b < br.poset.size(); ++b)
      order_mismatch += br.poset.leq(a, b) != w.bruhat_leq(reps[br.members[a]], reps[br.members[b]]);

  // one SPM per (ideal, reduced expression)
  struct Work {
    Elem z;
    Word word;
  };
  std::vector<Work> work;
  for (Elem z = 0; z < br.poset.size(); ++z)
    if (br.members[z] != x0)
      for (auto& word : all_reduced_expressions(x, x0, br.members[z])) work.push_back({z, std::move(word)});
  const auto spm_ok = run_pool<bool>(work.size(), st.jobs, [&](std::size_t i) {
    try {
      auto spm = spm_qp(x, br, work[i].z, work[i].word);
      return lifting_check(spm.ideal.poset, spm.map).empty();
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::VerificationFailed) return false;
      throw;
    }
  });
  const auto spm_failures = static_cast<std::size_t>(std::count(spm_ok.begin(), spm_ok.end(), false));

  std::vector<std::pair<Elem, Elem>> pairs;
  for (Elem a = 0; a < br.poset.size(); ++a)
    for (Elem b = 0; b < br.poset.size(); ++b)
      if (br.poset.lt(a, b)) pairs.emplace_back(a, b);
  const auto shapes = run_pool<Shape>(pairs.size(), st.jobs, [&](std::size_t i) {
    auto [a, b] = pairs[i];
    return classify_ball_or_sphere(order_complex(open_interval(br.poset, a, b).poset),
                                   x.height[br.members[b]] - x.height[br.members[a]] - 2);
  });

  const auto lifting = qp_lifting_check(x, br);
  std::optional<bool> independent;
  if (x.size() <= 12) independent = !expression_dependence(x, x0).has_value();

  Json items = Json::array();
  std::size_t neither = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    neither += shapes[i] == Shape::Neither;
    items.push_back({{"lower", br.poset.id(pairs[i].first)}, {"upper", br.poset.id(pairs[i].second)},
                     {"shape", to_string(shapes[i])}});
  }
  Json lift = Json::array();
  for (const auto& c : lifting)
    lift.push_back({{"x", br.poset.id(c.x)}, {"y", br.poset.id(c.y)}, {"s", w.generator_name(c.s)}});
  r["bruhat"] = io::to_json(br.poset);
  r["summary"] = {{"elements", x.size()},
                  {"order_mismatches", order_mismatch},
                  {"spms_checked", work.size()},
                  {"spm_failures", spm_failures},
                  {"intervals", pairs.size()},
                  {"neither", neither},
                  {"lifting_counterexamples", lift},
                  {"expression_independent", independent ? Json(*independent) : Json(nullptr)}};
  r["items"] = std::move(items);
  emit(r, st);
  const bool ok = order_mismatch == 0 && spm_failures == 0 && neither == 0 && lifting.empty() && independent != false;
  return ok ? kAsPredicted : kViolation;
}

int cmd_nof_experiment(const GroupArgs& a, const Settings& st) {
  Source src;
  const int given = !a.group.empty() + !a.coxeter_file.empty();
  if (given != 1) throw CLI::ValidationError("exactly one of --group, --coxeter is required");
  load_group(src, a, st);
  const auto& w = *src.group;
  if (!src.theta) src.theta = DiagramAutomorphism::identity(w);
  const auto nof = nof_check(w, *src.theta);
  const auto sets = twisted_sets(w, *src.theta);
  const auto x = twisted_conjugation_wset(w, *src.theta, sets);
  const auto verdict = verify_quasiparabolic(w, x);
  Json items = Json::array();
  for (const auto& v : verdict.violations) {
    Json o{{"check", to_string(v.check)}, {"x", x.names[v.x]}};
    o["t"] = v.t ? Json(w.name(*v.t)) : Json(nullptr);
    o["s"] = v.s ? Json(w.generator_name(*v.s)) : Json(nullptr);
    items.push_back(std::move(o));
  }
  auto r = report("nof-experiment", src.inputs);
  r["summary"] = {{"nof", nof.holds},
                  {"involutions", sets.involutions.size()},
                  {"twisted_identities", sets.identities.size()},
                  {"quasiparabolic", verdict.holds()},
                  {"violations", verdict.violations.size()},
                  {"note", "evidence only; nothing is asserted"}};
  r["wset"] = io::to_json(x);
  r["items"] = std::move(items);
  emit(r, st);
  return kAsPredicted;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pircon-lab: special partial matchings on finite posets"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings st;
  app.add_option("--format", st.format, "json or tsv")->check(CLI::IsMember({"json", "tsv"}));
  app.add_option("--jobs", st.jobs, "worker threads (0 = automatic)");
  app.add_option("--out", st.out, "write the report here instead of stdout");
  app.add_option("--max-order", st.max_order, "largest Coxeter group to build");
  app.add_flag("--timing", st.timing, "print wall-clock time to stderr");

  GroupArgs classify, certify, convert, verify, collapse, nof;
  std::string mode = "pircon", provider = "search", spm_file, cert_file, qp_group, qp_j;
  bool shadow = false;

  auto* c1 = app.add_subcommand("classify-intervals", "classify every open interval as ball, sphere or neither");
  add_source_options(c1, classify);
  auto* c2 = app.add_subcommand("certify", "certify pircon or zircon ideal by ideal");
  add_source_options(c2, certify);
  c2->add_option("--mode", mode)->check(CLI::IsMember({"pircon", "zircon"}));
  c2->add_option("--provider", provider, "search, or twisted for M(x) = theta(s) x s")
      ->check(CLI::IsMember({"search", "twisted"}));
  auto* c3 = app.add_subcommand("convert", "run the fibre conversion pipeline on an SPM");
  add_source_options(c3, convert);
  c3->add_option("--spm", spm_file, "SPM JSON file; default: the first SPM found")->check(CLI::ExistingFile);
  c3->add_flag("--shadow", shadow, "classify every intermediate poset");
  auto* c4 = app.add_subcommand("verify-certificate", "replay a pircon or conversion certificate");
  add_source_options(c4, verify);
  c4->add_option("--certificate", cert_file)->required()->check(CLI::ExistingFile);
  auto* c5 = app.add_subcommand("counterexample-a4", "the A4 twisted-identity ideal that is not a pircon");
  auto* c6 = app.add_subcommand("collapse-demo", "collapse the Morse matching on P x 2 to the void complex");
  add_source_options(c6, collapse);
  auto* c7 = app.add_subcommand("qp", "quasiparabolic checks on W/W_J");
  c7->add_option("--group", qp_group)->required();
  c7->add_option("--J", qp_j, "comma-separated generators, e.g. s1,s3");
  auto* c8 = app.add_subcommand("nof-experiment", "is twisted conjugation on iota(theta) quasiparabolic?");
  add_source_options(c8, nof, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kAsPredicted : kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    st.max_elements = env_cap(st.max_elements);
    int code = kUsage;
    if (*c1) code = cmd_classify(classify, st);
    if (*c2) code = cmd_certify(certify, mode, provider, st);
    if (*c3) code = cmd_convert(convert, spm_file, shadow, st);
    if (*c4) code = cmd_verify_certificate(verify, cert_file, st);
    if (*c5) code = cmd_counterexample_a4(st);
    if (*c6) code = cmd_collapse_demo(collapse, st);
    if (*c7) code = cmd_qp(qp_group, qp_j, st);
    if (*c8) code = cmd_nof_experiment(nof, st);
    if (st.timing) {
      const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      std::cerr << "timing_ms\t" << ms << '\n';
    }
    return code;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::AuditFailed || e.kind() == ErrorKind::VerificationFailed ? kViolation : kUsage;
  }
}
