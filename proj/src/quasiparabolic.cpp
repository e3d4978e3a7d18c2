#include "pircon/quasiparabolic.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <set>

#include "pircon/error.hpp"

namespace pircon {

Elem ScaledWSet::act(const Word& word, Elem x) const {
  for (auto it = word.rbegin(); it != word.rend(); ++it) x = act(*it, x);
  return x;
}

namespace {

GElem minimal_rep(const CoxeterGroup& w, GElem g, const std::vector<int>& j) {
  for (bool moved = true; moved;) {
    moved = false;
    for (int s : j)
      if (w.is_right_descent(g, s)) {
        g = w.right(g, s);
        moved = true;
      }
  }
  return g;
}

}  // namespace

std::vector<GElem> minimal_representatives(const CoxeterGroup& w, const std::vector<int>& j) {
  for (int s : j)
    if (s < 0 || s >= w.rank()) throw Error(ErrorKind::InvalidArgument, "J contains an unknown generator");
  std::set<GElem> reps;
  for (GElem g = 0; g < w.order(); ++g) reps.insert(minimal_rep(w, g, j));
  return {reps.begin(), reps.end()};
}

ScaledWSet parabolic_quotient(const CoxeterGroup& w, const std::vector<int>& j) {
  const auto reps = minimal_representatives(w, j);
  std::map<GElem, Elem> where;
  for (Elem i = 0; i < reps.size(); ++i) where[reps[i]] = i;
  ScaledWSet x;
  for (GElem g : reps) {
    x.names.push_back(w.name(g));
    x.height.push_back(w.length(g));
  }
  x.action.assign(static_cast<std::size_t>(w.rank()), std::vector<Elem>(reps.size()));
  for (int s = 0; s < w.rank(); ++s)
    for (Elem i = 0; i < reps.size(); ++i)
      x.action[static_cast<std::size_t>(s)][i] = where.at(minimal_rep(w, w.left(s, reps[i]), j));
  return x;
}

ScaledWSet disjoint_union(const ScaledWSet& a, const ScaledWSet& b) {
  if (a.generators() != b.generators()) throw Error(ErrorKind::InvalidArgument, "W-sets for different groups");
  ScaledWSet out = a;
  for (Elem e = 0; e < b.size(); ++e) {
    out.names.push_back(b.names[e] + "'");
    out.height.push_back(b.height[e]);
  }
  for (int s = 0; s < b.generators(); ++s)
    for (Elem e = 0; e < b.size(); ++e) out.action[static_cast<std::size_t>(s)].push_back(a.size() + b.act(s, e));
  return out;
}

ScaledWSet twisted_conjugation_wset(const CoxeterGroup& w, const DiagramAutomorphism& theta,
                                    const TwistedSets& sets) {
  ScaledWSet x;
  const auto& elems = sets.identities;
  for (GElem g : elems) {
    x.names.push_back(w.name(g));
    x.height.push_back(sets.rho[*sets.involution_index(g)]);
  }
  x.action.assign(static_cast<std::size_t>(w.rank()), std::vector<Elem>(elems.size()));
  for (int s = 0; s < w.rank(); ++s)
    for (Elem i = 0; i < elems.size(); ++i)
      x.action[static_cast<std::size_t>(s)][i] = *sets.identity_index(w.right(w.left(theta(s), elems[i]), s));
  return x;
}

std::string_view to_string(QpCheck check) {
  switch (check) {
    case QpCheck::Involution: return "involution";
    case QpCheck::HeightStep: return "height-step";
    case QpCheck::Braid: return "braid";
    case QpCheck::QP1: return "QP1";
    case QpCheck::QP2: return "QP2";
  }
  return "?";
}

QpVerdict verify_quasiparabolic(const CoxeterGroup& w, const ScaledWSet& x) {
  QpVerdict v;
  const int r = w.rank();
  if (x.generators() != r) throw Error(ErrorKind::InvalidArgument, "W-set and group have different ranks");
  for (int s = 0; s < r; ++s)
    for (Elem e = 0; e < x.size(); ++e) {
      if (x.act(s, x.act(s, e)) != e) v.violations.push_back({QpCheck::Involution, e, {}, s, {}});
      if (std::abs(x.height[x.act(s, e)] - x.height[e]) > 1)
        v.violations.push_back({QpCheck::HeightStep, e, {}, s, {}});
    }
  for (int s = 0; s < r; ++s)
    for (int t = s + 1; t < r; ++t) {
      Word braid;
      for (int k = 0; k < w.coxeter_m(s, t); ++k) {
        braid.push_back(s);
        braid.push_back(t);
      }
      for (Elem e = 0; e < x.size(); ++e)
        if (x.act(braid, e) != e) v.violations.push_back({QpCheck::Braid, e, {}, s, t});
    }
  if (!v.holds()) return v;

  for (GElem t : w.reflections()) {
    const Word& tw = w.word(t);
    for (Elem e = 0; e < x.size(); ++e) {
      const Elem te = x.act(tw, e);
      if (x.height[te] == x.height[e] && te != e) v.violations.push_back({QpCheck::QP1, e, t, {}, {}});
      if (x.height[te] <= x.height[e]) continue;
      for (int s = 0; s < r; ++s)
        if (x.height[x.act(s, te)] < x.height[x.act(s, e)] && te != x.act(s, e))
          v.violations.push_back({QpCheck::QP2, e, t, s, {}});
    }
  }
  return v;
}

std::vector<Elem> orbit(const ScaledWSet& x, Elem x0) {
  std::set<Elem> seen{x0};
  std::deque<Elem> todo{x0};
  while (!todo.empty()) {
    const Elem e = todo.front();
    todo.pop_front();
    for (int s = 0; s < x.generators(); ++s)
      if (seen.insert(x.act(s, e)).second) todo.push_back(x.act(s, e));
  }
  return {seen.begin(), seen.end()};
}

std::vector<Elem> w_minimal_elements(const ScaledWSet& x) {
  std::vector<Elem> out;
  for (Elem e = 0; e < x.size(); ++e) {
    bool minimal = true;
    for (int s = 0; s < x.generators(); ++s) minimal = minimal && x.height[e] <= x.height[x.act(s, e)];
    if (minimal) out.push_back(e);
  }
  std::vector<bool> claimed(x.size(), false);
  for (Elem e : out) {
    if (claimed[e])
      throw Error(ErrorKind::UniquenessViolated, "two W-minimal elements in the orbit of " + x.names[e]);
    for (Elem o : orbit(x, e)) claimed[o] = true;
  }
  return out;
}

namespace {

// Descents of y: generators lowering the height.
std::vector<int> descents(const ScaledWSet& x, Elem y) {
  std::vector<int> out;
  for (int s = 0; s < x.generators(); ++s)
    if (x.height[x.act(s, y)] < x.height[y]) out.push_back(s);
  return out;
}

void collect_expressions(const ScaledWSet& x, Elem x0, Elem y, Word& prefix, std::vector<Word>& out) {
  if (x.height[y] == x.height[x0]) {
    if (y == x0) out.push_back(prefix);
    return;
  }
  for (int s : descents(x, y)) {
    prefix.push_back(s);
    collect_expressions(x, x0, x.act(s, y), prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

Word reduced_expression(const ScaledWSet& x, Elem x0, Elem y) {
  // Greedy smallest descent; every descending path ends at the unique
  // minimal element of a quasiparabolic orbit, so greedy gives the lex-least.
  Word word;
  Elem cur = y;
  while (x.height[cur] > x.height[x0]) {
    auto d = descents(x, cur);
    if (d.empty()) break;
    word.push_back(d.front());
    cur = x.act(d.front(), cur);
  }
  if (cur != x0)
    throw Error(ErrorKind::NoReducedExpression, "no reduced expression of " + x.names[y] + " from " + x.names[x0]);
  return word;
}

std::vector<Word> all_reduced_expressions(const ScaledWSet& x, Elem x0, Elem y) {
  std::vector<Word> out;
  Word prefix;
  collect_expressions(x, x0, y, prefix, out);
  if (out.empty())
    throw Error(ErrorKind::NoReducedExpression, "no reduced expression of " + x.names[y] + " from " + x.names[x0]);
  return out;
}

std::vector<Elem> subword_evaluations(const ScaledWSet& x, Elem x0, const Word& word) {
  std::set<Elem> reached{x0};
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    std::vector<Elem> moved;
    for (Elem e : reached) moved.push_back(x.act(*it, e));
    reached.insert(moved.begin(), moved.end());
  }
  return {reached.begin(), reached.end()};
}

std::optional<Elem> QpBruhat::local(Elem e) const {
  auto it = std::find(members.begin(), members.end(), e);
  if (it == members.end()) return std::nullopt;
  return static_cast<Elem>(it - members.begin());
}

namespace {

QpBruhat assemble(const ScaledWSet& x, Elem x0, const std::vector<std::vector<Elem>>& below) {
  QpBruhat br;
  br.members = orbit(x, x0);
  std::stable_sort(br.members.begin(), br.members.end(),
                   [&](Elem a, Elem b) { return x.height[a] < x.height[b]; });
  std::vector<std::string> ids;
  for (Elem e : br.members) ids.push_back(x.names[e]);
  br.poset = FinitePoset::from_relation(std::move(ids), [&](Elem a, Elem b) {
    const auto& lower = below[br.members[b]];
    return std::binary_search(lower.begin(), lower.end(), br.members[a]);
  });
  auto rank = rank_function(br.poset);
  if (!rank) throw Error(ErrorKind::VerificationFailed, "Br(X) is not graded");
  for (Elem i = 0; i < br.members.size(); ++i)
    if ((*rank)[i] != x.height[br.members[i]] - x.height[x0])
      throw Error(ErrorKind::VerificationFailed, "rank of " + x.names[br.members[i]] + " differs from its height");
  return br;
}

}  // namespace

QpBruhat qp_bruhat(const ScaledWSet& x, Elem x0) {
  std::vector<std::vector<Elem>> below(x.size());
  for (Elem y : orbit(x, x0)) below[y] = subword_evaluations(x, x0, reduced_expression(x, x0, y));
  return assemble(x, x0, below);
}

std::optional<ExpressionDependence> expression_dependence(const ScaledWSet& x, Elem x0) {
  for (Elem y : orbit(x, x0)) {
    const auto reference = subword_evaluations(x, x0, reduced_expression(x, x0, y));
    for (auto& word : all_reduced_expressions(x, x0, y))
      if (subword_evaluations(x, x0, word) != reference) return ExpressionDependence{y, word};
  }
  return std::nullopt;
}

std::vector<QpLiftingCounterexample> qp_lifting_check(const ScaledWSet& x, const QpBruhat& br) {
  std::vector<QpLiftingCounterexample> out;
  const auto& p = br.poset;
  const std::size_t n = p.size();
  for (int s = 0; s < x.generators(); ++s) {
    std::vector<Elem> image(n);
    for (Elem i = 0; i < n; ++i) image[i] = *br.local(x.act(s, br.members[i]));
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) {
        if (!p.leq(a, b) || p.leq(image[a], image[b])) continue;
        if (!p.leq(image[a], b) || !p.leq(a, image[b])) out.push_back({a, b, s});
      }
  }
  return out;
}

QpSpm spm_qp(const ScaledWSet& x, const QpBruhat& br, Elem z, std::optional<Word> expression) {
  const Elem x0 = br.members[*br.poset.bottom()];
  const Elem top = br.members[z];
  if (top == x0) throw Error(ErrorKind::InvalidArgument, "z must not be the minimal element");
  const Word word = expression ? *expression : reduced_expression(x, x0, top);
  if (word.empty() || x.act(word, x0) != top ||
      static_cast<int>(word.size()) != x.height[top] - x.height[x0])
    throw Error(ErrorKind::InvalidArgument, "not a reduced expression of " + x.names[top]);
  const int s1 = word.front();

  QpSpm out;
  out.ideal = principal_ideal(br.poset, z);
  out.map.resize(out.ideal.members.size());
  for (Elem i = 0; i < out.ideal.members.size(); ++i) {
    const Elem image = x.act(s1, br.members[out.ideal.members[i]]);
    auto j = br.local(image);
    auto local = j ? out.ideal.local(*j) : std::nullopt;
    if (!local) throw Error(ErrorKind::VerificationFailed, "s1 x leaves [x0, z] at x = " + x.names[image]);
    out.map[i] = *local;
  }
  auto verdict = verify_spm(out.ideal.poset, out.map);
  if (!verdict.valid()) {
    const auto& bad = verdict.violations.front();
    throw Error(ErrorKind::VerificationFailed,
                "M(x) = s1 x on the ideal of " + x.names[top] + " fails axiom " +
                    std::to_string(static_cast<int>(bad.axiom)));
  }
  return out;
}

}  // namespace pircon
