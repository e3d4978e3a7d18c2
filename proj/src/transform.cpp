#include "pircon/transform.hpp"

#include <algorithm>
#include <map>

#include "pircon/error.hpp"
#include "pircon/spm.hpp"

namespace pircon {

namespace {

// Compares two posets whose elements correspond by id.
bool same_by_ids(const FinitePoset& a, const FinitePoset& b) {
  if (a.size() != b.size()) return false;
  std::vector<Elem> map(a.size());
  for (Elem e = 0; e < a.size(); ++e) {
    auto f = b.find(a.id(e));
    if (!f) return false;
    map[e] = *f;
  }
  return is_order_isomorphism(a, b, map);
}

Shape proper_part_shape(const FinitePoset& p) {
  auto part = proper_part(p);
  return classify_ball_or_sphere(order_complex(part.poset));
}

}  // namespace

std::optional<CleanWitness> find_clean_witness(const FinitePoset& p, Elem x, Elem z) {
  auto top = p.top();
  if (!top || !p.leq(x, z)) return std::nullopt;
  auto upper = interval(p, x, *top);
  const Elem z_local = *upper.local(z);
  for (Elem c : p.lower_covers(*top)) {
    if (!p.leq(x, c)) continue;
    auto base = interval(p, x, c);
    if (2 * base.poset.size() != upper.poset.size()) continue;
    FinitePoset doubled = product_with_chain2(base.poset);
    IsoOptions opts;
    opts.pins = {{z_local, chain2_index(*base.local(x), true)}};
    auto iso = is_isomorphic(upper.poset, doubled, opts);
    if (!iso) continue;
    CleanWitness w;
    w.coatom = p.id(c);
    for (Elem a = 0; a < upper.poset.size(); ++a) w.phi.emplace_back(upper.poset.id(a), doubled.id((*iso)[a]));
    return w;
  }
  return std::nullopt;
}

bool check_clean_witness(const FinitePoset& p, Elem x, Elem z, const CleanWitness& witness) {
  auto top = p.top();
  auto c = p.find(witness.coatom);
  if (!top || !c || !p.covered_by(*c, *top) || !p.leq(x, *c) || !p.leq(x, z)) return false;
  auto upper = interval(p, x, *top);
  auto base = interval(p, x, *c);
  FinitePoset doubled = product_with_chain2(base.poset);
  if (witness.phi.size() != upper.poset.size()) return false;
  std::vector<Elem> map(upper.poset.size(), static_cast<Elem>(-1));
  for (const auto& [from, to] : witness.phi) {
    auto a = upper.poset.find(from);
    auto b = doubled.find(to);
    if (!a || !b || map[*a] != static_cast<Elem>(-1)) return false;
    map[*a] = *b;
  }
  if (!is_order_isomorphism(upper.poset, doubled, map)) return false;
  return doubled.id(map[*upper.local(z)]) == chain2_id(p.id(x), true);
}

ZipperVerdict zipper_conditions(const FinitePoset& p, Elem x, Elem y, Elem z) {
  ZipperVerdict v;
  v.distinct = x != y && y != z && x != z;
  if (!v.distinct) return v;
  auto downs = p.lower_covers(z);
  v.covers_only_xy = downs.size() == 2 && std::find(downs.begin(), downs.end(), x) != downs.end() &&
                     std::find(downs.begin(), downs.end(), y) != downs.end();
  v.is_join = join(p, x, y) == z;
  auto dx = p.down_set(x);
  auto dy = p.down_set(y);
  dx.reset(x);
  dy.reset(y);
  v.same_strict_down = dx == dy;
  v.proper = p.top() != z;
  return v;
}

ZipperVerdict detect_zipper(const FinitePoset& p, Elem x, Elem y, Elem z) {
  ZipperVerdict v = zipper_conditions(p, x, y, z);
  if (v.zipper() && v.proper) {
    v.witness = find_clean_witness(p, x, z);
    v.clean = v.witness.has_value();
  }
  return v;
}

FinitePoset zip(const FinitePoset& p, Elem x, Elem y, Elem z, const std::string& merged_id) {
  auto v = zipper_conditions(p, x, y, z);
  if (!v.zipper()) throw Error(ErrorKind::NotProper, "(" + p.id(x) + ", " + p.id(y) + ", " + p.id(z) + ") is not a zipper");
  if (!v.proper) throw Error(ErrorKind::NotProper, "zipper top " + p.id(z) + " is the maximum");
  std::vector<Elem> keep;
  std::vector<std::string> ids;
  for (Elem e = 0; e < p.size(); ++e)
    if (e != x && e != y && e != z) {
      keep.push_back(e);
      ids.push_back(p.id(e));
    }
  const Elem merged = keep.size();
  ids.push_back(merged_id);
  return FinitePoset::from_relation(std::move(ids), [&](Elem a, Elem b) {
    if (a == merged && b == merged) return true;
    if (a == merged) return p.leq(x, keep[b]) || p.leq(y, keep[b]);
    if (b == merged) return p.leq(keep[a], x);
    return p.leq(keep[a], keep[b]);
  });
}

RemovableVerdict detect_removable(const FinitePoset& p, Elem z) {
  auto top = p.top();
  if (!top) throw Error(ErrorKind::NoMaximum, "removability needs a maximum");
  if (z == *top) throw Error(ErrorKind::NotRemovable, "the maximum is never removable");
  RemovableVerdict v;
  const auto& downs = p.lower_covers(z);
  if (downs.size() != 1) return v;
  v.covered = downs.front();
  v.witness = find_clean_witness(p, downs.front(), z);
  v.removable = v.witness.has_value();
  return v;
}

FinitePoset remove(const FinitePoset& p, Elem z) {
  if (!detect_removable(p, z).removable) throw Error(ErrorKind::NotRemovable, p.id(z) + " is not removable");
  std::vector<Elem> keep;
  for (Elem e = 0; e < p.size(); ++e)
    if (e != z) keep.push_back(e);
  return p.induced(keep);
}

bool is_order_projection(const FinitePoset& domain, const FinitePoset& codomain, std::span<const Elem> map) {
  if (map.size() != domain.size()) return false;
  for (Elem a = 0; a < domain.size(); ++a)
    for (Elem b = 0; b < domain.size(); ++b)
      if (domain.leq(a, b) && !codomain.leq(map[a], map[b])) return false;
  std::vector<std::vector<Elem>> fib(codomain.size());
  for (Elem a = 0; a < domain.size(); ++a) fib[map[a]].push_back(a);
  for (Elem u = 0; u < codomain.size(); ++u)
    for (Elem v = 0; v < codomain.size(); ++v) {
      if (!codomain.leq(u, v)) continue;
      bool lifted = false;
      for (Elem a : fib[u]) {
        for (Elem b : fib[v])
          if (domain.leq(a, b)) {
            lifted = true;
            break;
          }
        if (lifted) break;
      }
      if (!lifted) return false;
    }
  return true;
}

OrderProjection order_projection(const FinitePoset& p, std::span<const Elem> spm) {
  if (!verify_spm(p, spm).valid()) throw Error(ErrorKind::SpmInvalid, "map is not an SPM");
  auto lo = p.bottom();
  if (!lo) throw Error(ErrorKind::NoMaximum, "order projection needs a minimum");
  const Elem top = *p.top();
  const Elem coatom = spm[top];
  auto lower = interval(p, *lo, coatom);

  OrderProjection pi;
  pi.domain = product_with_chain2(lower.poset);
  pi.codomain = p;
  pi.map.resize(pi.domain.size());
  for (Elem u = 0; u < lower.poset.size(); ++u) {
    const Elem q = lower.members[u];
    pi.map[chain2_index(u, false)] = q;
    pi.map[chain2_index(u, true)] = p.covered_by(q, spm[q]) ? spm[q] : q;
  }
  pi.fibres.assign(p.size(), {});
  for (Elem a = 0; a < pi.domain.size(); ++a) pi.fibres[pi.map[a]].push_back(a);

  // The same fibres from the four-case description.
  for (Elem q = 0; q < p.size(); ++q) {
    std::vector<Elem> expected;
    const Elem m = spm[q];
    if (!p.leq(q, coatom)) {
      auto mu = lower.local(m);
      if (!mu) throw Error(ErrorKind::NotOrderProjection, "M(" + p.id(q) + ") lies outside [0^, M(1^)]");
      expected = {chain2_index(*mu, true)};
    } else {
      const Elem u = *lower.local(q);
      if (p.lt(q, m)) {
        expected = {chain2_index(u, false)};
      } else if (q == m) {
        expected = {chain2_index(u, false), chain2_index(u, true)};
      } else {
        expected = {chain2_index(u, false), chain2_index(*lower.local(m), true), chain2_index(u, true)};
      }
    }
    std::sort(expected.begin(), expected.end());
    if (expected != pi.fibres[q])
      throw Error(ErrorKind::NotOrderProjection, "fibre over " + p.id(q) + " disagrees with the case formula");
  }
  if (!is_order_projection(pi.domain, pi.codomain, pi.map))
    throw Error(ErrorKind::NotOrderProjection, "pi is not an order projection");
  return pi;
}

FinitePoset fibre_poset(const OrderProjection& pi) {
  FinitePoset fib;
  try {
    fib = FinitePoset::from_relation(pi.codomain.ids(), [&](Elem u, Elem v) {
      for (Elem a : pi.fibres[u])
        for (Elem b : pi.fibres[v])
          if (pi.domain.leq(a, b)) return true;
      return false;
    });
  } catch (const Error& e) {
    throw Error(ErrorKind::NotOrderProjection, std::string("fibre relation is not a partial order: ") + e.what());
  }
  std::vector<Elem> identity(fib.size());
  for (Elem e = 0; e < fib.size(); ++e) identity[e] = e;
  if (!is_order_isomorphism(fib, pi.codomain, identity))
    throw Error(ErrorKind::NotOrderProjection, "fibre poset is not isomorphic to the codomain");
  return fib;
}

std::string_view to_string(StepKind kind) {
  switch (kind) {
    case StepKind::Trivial: return "Trivial";
    case StepKind::Removal: return "Removal";
    case StepKind::CleanZipping: return "CleanZipping";
  }
  return "Trivial";
}

std::size_t ConvertCertificate::count(StepKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(steps.begin(), steps.end(), [&](const ConvertStep& s) { return s.kind == kind; }));
}

namespace {

std::string fibre_name(const std::string& id) { return "[" + id + "]"; }

/*
  Step poset: a partition of Q into groups, ordered by "some member of A is
  below some member of B". Groups are singletons until their fibre is
  identified.
*/
struct StepPoset {
  std::vector<std::vector<Elem>> groups;
  std::vector<std::string> ids;
  FinitePoset poset;

  void rebuild(const FinitePoset& q) {
    poset = FinitePoset::from_relation(ids, [&](Elem a, Elem b) {
      for (Elem x : groups[a])
        for (Elem y : groups[b])
          if (q.leq(x, y)) return true;
      return false;
    });
  }

  // Replaces the singleton groups of `members` by one group named `name`.
  StepPoset merged(const FinitePoset& q, const std::vector<Elem>& members, const std::string& name) const {
    StepPoset next;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      bool hit = groups[g].size() == 1 &&
                 std::find(members.begin(), members.end(), groups[g][0]) != members.end();
      if (hit) continue;
      next.groups.push_back(groups[g]);
      next.ids.push_back(ids[g]);
    }
    next.groups.push_back(members);
    next.ids.push_back(name);
    next.rebuild(q);
    return next;
  }
};

[[noreturn]] void audit_failure(const std::string& what) { throw Error(ErrorKind::AuditFailed, what); }

}  // namespace

ConvertCertificate convert_sequence(const FinitePoset& p, std::span<const Elem> spm, const ConvertOptions& options) {
  OrderProjection pi = order_projection(p, spm);
  FinitePoset fib = fibre_poset(pi);
  const FinitePoset& q = pi.domain;

  ConvertCertificate cert;
  cert.source = q;
  cert.spm_has_fixed_points = !fixed_points(spm).empty();

  StepPoset current;
  for (Elem a = 0; a < q.size(); ++a) {
    current.groups.push_back({a});
    current.ids.push_back(q.id(a));
  }
  current.poset = q;
  std::optional<Shape> shape;
  if (options.homology_shadow) shape = proper_part_shape(current.poset);

  for (Elem target : linear_extension(fib)) {
    const auto& members = pi.fibres[target];
    ConvertStep step;
    step.target = p.id(target);
    step.merged_id = fibre_name(p.id(target));
    for (Elem m : members) step.members.push_back(q.id(m));

    StepPoset next = current.merged(q, members, step.merged_id);
    const FinitePoset& before = current.poset;

    if (members.size() == 1) {
      step.kind = StepKind::Trivial;
      std::vector<std::string> renamed = before.ids();
      renamed[before.index(q.id(members[0]))] = step.merged_id;
      if (!same_by_ids(before.relabeled(renamed), next.poset))
        audit_failure("renaming " + step.members[0] + " does not give the next step poset");
    } else if (members.size() == 2) {
      step.kind = StepKind::Removal;
      // fibre {(p, alpha), (p, beta)}; the beta copy is removed
      const Elem x = before.index(q.id(members[0]));
      const Elem z = before.index(q.id(members[1]));
      step.x = before.id(x);
      step.z = before.id(z);
      auto verdict = detect_removable(before, z);
      if (!verdict.removable || verdict.covered != x)
        audit_failure(step.z + " is not removable over " + step.x);
      step.witness = verdict.witness;
      FinitePoset removed = remove(before, z);
      std::vector<std::string> renamed = removed.ids();
      renamed[removed.index(step.x)] = step.merged_id;
      if (!same_by_ids(removed.relabeled(renamed), next.poset))
        audit_failure("removal of " + step.z + " does not give the next step poset");
    } else if (members.size() == 3) {
      step.kind = StepKind::CleanZipping;
      // fibre {(p, alpha), (M(p), beta), (p, beta)}
      const Elem u = *std::find_if(members.begin(), members.end(), [&](Elem m) { return m % 2 == 0; });
      const Elem zq = u + 1;
      const Elem yq = *std::find_if(members.begin(), members.end(), [&](Elem m) { return m != u && m != zq; });
      const Elem x = before.index(q.id(u));
      const Elem y = before.index(q.id(yq));
      const Elem z = before.index(q.id(zq));
      step.x = before.id(x);
      step.y = before.id(y);
      step.z = before.id(z);
      auto verdict = detect_zipper(before, x, y, z);
      if (!verdict.zipper() || !verdict.clean)
        audit_failure("(" + step.x + ", " + step.y + ", " + step.z + ") is not a clean zipper");
      step.witness = verdict.witness;
      if (!same_by_ids(zip(before, x, y, z, step.merged_id), next.poset))
        audit_failure("zipping " + step.z + " does not give the next step poset");
    } else {
      audit_failure("fibre over " + step.target + " has " + std::to_string(members.size()) + " elements");
    }

    step.size_after = next.poset.size();
    if (options.homology_shadow) {
      step.shape_before = shape;
      shape = proper_part_shape(next.poset);
      step.shape_after = shape;
    }
    cert.steps.push_back(std::move(step));
    current = std::move(next);
  }

  // P_t should be P with every element renamed to its fibre.
  std::vector<Elem> bijection(current.poset.size());
  for (Elem e = 0; e < current.poset.size(); ++e) {
    const auto& name = current.ids[e];
    auto target = p.find(name.substr(1, name.size() - 2));
    if (!target) audit_failure("final poset element " + name + " has no counterpart");
    bijection[e] = *target;
    cert.final_bijection.emplace_back(name, p.id(*target));
  }
  if (!is_order_isomorphism(current.poset, p, bijection)) audit_failure("final poset is not isomorphic to P");
  if ((cert.count(StepKind::Removal) > 0) != cert.spm_has_fixed_points)
    audit_failure("removal steps do not match the fixed points of M");
  return cert;
}

CertificateCheck verify_convert_certificate(const FinitePoset& p, const ConvertCertificate& cert) {
  CertificateCheck check;
  auto fail = [&](std::string what) {
    check.ok = false;
    check.failures.push_back(std::move(what));
  };
  const FinitePoset& q = cert.source;
  StepPoset current;
  for (Elem a = 0; a < q.size(); ++a) {
    current.groups.push_back({a});
    current.ids.push_back(q.id(a));
  }
  current.poset = q;
  std::size_t zips = 0, removals = 0;
  try {
    for (const auto& step : cert.steps) {
      std::vector<Elem> members;
      for (const auto& id : step.members) members.push_back(q.index(id));
      const std::size_t expected = step.kind == StepKind::Trivial ? 1 : step.kind == StepKind::Removal ? 2 : 3;
      if (members.size() != expected) {
        fail("step " + step.merged_id + ": tag does not match fibre size");
        continue;
      }
      const FinitePoset& before = current.poset;
      if (step.kind == StepKind::Removal) {
        ++removals;
        const Elem x = before.index(step.x), z = before.index(step.z);
        if (before.lower_covers(z) != std::vector<Elem>{x}) fail("step " + step.merged_id + ": z does not cover only x");
        if (!step.witness || !check_clean_witness(before, x, z, *step.witness))
          fail("step " + step.merged_id + ": removal witness rejected");
      } else if (step.kind == StepKind::CleanZipping) {
        ++zips;
        const Elem x = before.index(step.x), y = before.index(step.y), z = before.index(step.z);
        auto v = zipper_conditions(before, x, y, z);
        if (!v.zipper() || !v.proper) fail("step " + step.merged_id + ": not a proper zipper");
        if (!step.witness || !check_clean_witness(before, x, z, *step.witness))
          fail("step " + step.merged_id + ": cleanness witness rejected");
      }
      current = current.merged(q, members, step.merged_id);
      if (current.poset.size() != step.size_after) fail("step " + step.merged_id + ": size mismatch");
    }
    if (q.size() - 2 * zips - removals != p.size()) fail("cardinalities do not reconcile");
    std::vector<Elem> bijection(current.poset.size(), static_cast<Elem>(-1));
    for (const auto& [from, to] : cert.final_bijection) {
      auto a = current.poset.find(from);
      auto b = p.find(to);
      if (!a || !b) {
        fail("final bijection names unknown element " + from + " -> " + to);
        continue;
      }
      bijection[*a] = *b;
    }
    if (!is_order_isomorphism(current.poset, p, bijection)) fail("final bijection is not an isomorphism");
  } catch (const Error& e) {
    fail(e.what());
  }
  return check;
}

}  // namespace pircon
