#include "pircon/coxeter.hpp"

#include <algorithm>
#include <deque>
#include <regex>
#include <set>

#include "pircon/error.hpp"

namespace pircon {

namespace {

using Perm = std::vector<int>;

Perm identity_perm(int n) {
  Perm p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
  return p;
}

Perm swapped(Perm p, std::initializer_list<std::pair<int, int>> swaps) {
  for (auto [a, b] : swaps) std::swap(p[static_cast<std::size_t>(a)], p[static_cast<std::size_t>(b)]);
  return p;
}

// (a * b)(i) = a(b(i))
Perm compose(const Perm& a, const Perm& b) {
  Perm c(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) c[i] = a[static_cast<std::size_t>(b[i])];
  return c;
}

std::string key_of(const Perm& p) {
  std::string k;
  k.reserve(p.size());
  for (int v : p) k.push_back(static_cast<char>(v));
  return k;
}

std::size_t factorial(int n) {
  std::size_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::size_t>(i);
  return f;
}

std::size_t expected_order(const CoxeterSpec& spec) {
  switch (spec.type) {
    case CoxeterType::A: return factorial(spec.rank + 1);
    case CoxeterType::B: return (std::size_t{1} << spec.rank) * factorial(spec.rank);
    case CoxeterType::D: return (std::size_t{1} << (spec.rank - 1)) * factorial(spec.rank);
    case CoxeterType::I2: return 2 * static_cast<std::size_t>(spec.m);
  }
  return 0;
}

std::vector<Perm> generators_for(const CoxeterSpec& spec) {
  const int n = spec.rank;
  std::vector<Perm> gens;
  switch (spec.type) {
    case CoxeterType::A:
      for (int i = 1; i <= n; ++i) gens.push_back(swapped(identity_perm(n + 1), {{i - 1, i}}));
      break;
    case CoxeterType::B:
    case CoxeterType::D: {
      // point i stands for +(i+1), point n+i for -(i+1)
      const Perm id = identity_perm(2 * n);
      if (spec.type == CoxeterType::B)
        gens.push_back(swapped(id, {{0, n}}));
      else
        gens.push_back(swapped(id, {{0, n + 1}, {1, n}}));
      for (int i = 1; i < n; ++i) gens.push_back(swapped(id, {{i - 1, i}, {n + i - 1, n + i}}));
      break;
    }
    case CoxeterType::I2: {
      const int m = spec.m;
      if (m == 2) {
        gens.push_back(swapped(identity_perm(4), {{0, 1}}));
        gens.push_back(swapped(identity_perm(4), {{2, 3}}));
        break;
      }
      Perm a(static_cast<std::size_t>(m)), b(static_cast<std::size_t>(m));
      for (int i = 0; i < m; ++i) {
        a[static_cast<std::size_t>(i)] = (m - i) % m;
        b[static_cast<std::size_t>(i)] = (m + 1 - i) % m;
      }
      gens.push_back(a);
      gens.push_back(b);
      break;
    }
  }
  return gens;
}

}  // namespace

CoxeterSpec parse_coxeter_type(const std::string& text) {
  static const std::regex pattern(R"(^\s*([ABDI])\s*(\d+)\s*(?:\(\s*(\d+)\s*\))?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) throw Error(ErrorKind::UnsupportedType, "cannot parse type '" + text + "'");
  CoxeterSpec spec;
  const char t = m[1].str()[0];
  spec.rank = std::stoi(m[2].str());
  if (t == 'I') {
    if (spec.rank != 2 || !m[3].matched) throw Error(ErrorKind::UnsupportedType, "dihedral types are written I2(m)");
    spec.type = CoxeterType::I2;
    spec.m = std::stoi(m[3].str());
  } else {
    if (m[3].matched) throw Error(ErrorKind::UnsupportedType, "unexpected parameter in '" + text + "'");
    spec.type = t == 'A' ? CoxeterType::A : t == 'B' ? CoxeterType::B : CoxeterType::D;
  }
  return spec;
}

std::string to_string(const CoxeterSpec& spec) {
  switch (spec.type) {
    case CoxeterType::A: return "A" + std::to_string(spec.rank);
    case CoxeterType::B: return "B" + std::to_string(spec.rank);
    case CoxeterType::D: return "D" + std::to_string(spec.rank);
    case CoxeterType::I2: return "I2(" + std::to_string(spec.m) + ")";
  }
  return "?";
}

CoxeterGroup CoxeterGroup::build(const CoxeterSpec& spec, std::size_t max_order) {
  const bool ok = (spec.type == CoxeterType::A && spec.rank >= 1) ||
                  (spec.type == CoxeterType::B && spec.rank >= 2) ||
                  (spec.type == CoxeterType::D && spec.rank >= 2) ||
                  (spec.type == CoxeterType::I2 && spec.rank == 2 && spec.m >= 2);
  if (!ok) throw Error(ErrorKind::UnsupportedType, "unsupported Coxeter type " + to_string(spec));
  if (spec.rank > 12 || expected_order(spec) > max_order)
    throw Error(ErrorKind::GroupTooLarge, to_string(spec) + " has more than " + std::to_string(max_order) + " elements");

  CoxeterGroup g;
  g.spec_ = spec;
  g.generators_ = generators_for(spec);
  const std::size_t r = g.generators_.size();
  const int points = static_cast<int>(g.generators_[0].size());

  g.perms_.push_back(identity_perm(points));
  g.lengths_.push_back(0);
  g.words_.push_back({});
  g.by_perm_.emplace(key_of(g.perms_[0]), 0);
  g.ideals_.emplace_back(1, 1);

  // BFS in ShortLex order: parents are visited in order and extended by
  // generators in order, so the first word found is the ShortLex-least one.
  std::vector<GElem> parent{0};
  std::vector<int> via{-1};
  for (GElem w = 0; w < g.perms_.size(); ++w) {
    g.right_.emplace_back(r);
    for (std::size_t s = 0; s < r; ++s) {
      Perm next = compose(g.perms_[w], g.generators_[s]);
      auto [it, fresh] = g.by_perm_.emplace(key_of(next), g.perms_.size());
      if (fresh) {
        g.perms_.push_back(std::move(next));
        g.lengths_.push_back(g.lengths_[w] + 1);
        Word word = g.words_[w];
        word.push_back(static_cast<int>(s));
        g.words_.push_back(std::move(word));
        parent.push_back(w);
        via.push_back(static_cast<int>(s));
      }
      g.right_[w][s] = it->second;
    }
  }
  const std::size_t n = g.perms_.size();
  if (n != expected_order(spec))
    throw Error(ErrorKind::UnsupportedType, "realization of " + to_string(spec) + " has the wrong order");

  g.left_.assign(n, std::vector<GElem>(r));
  g.inverse_.assign(n, 0);
  for (GElem w = 0; w < n; ++w) {
    for (std::size_t s = 0; s < r; ++s) g.left_[w][s] = g.by_perm_.at(key_of(compose(g.generators_[s], g.perms_[w])));
    Perm inv(g.perms_[w].size());
    for (std::size_t i = 0; i < inv.size(); ++i) inv[static_cast<std::size_t>(g.perms_[w][i])] = static_cast<int>(i);
    g.inverse_[w] = g.by_perm_.at(key_of(inv));
    if (g.lengths_[w] > g.lengths_[g.longest_]) g.longest_ = w;
  }

  g.m_.assign(r, std::vector<int>(r, 1));
  for (std::size_t s = 0; s < r; ++s)
    for (std::size_t t = 0; t < r; ++t) g.m_[s][t] = g.element_order(g.right_[g.generator(static_cast<int>(s))][t]);

  // ideal(w) = ideal(ws) + ideal(ws) s for a right descent s
  g.ideals_.assign(n, boost::dynamic_bitset<>(n));
  g.ideals_[0].set(0);
  for (GElem w = 1; w < n; ++w) {
    const GElem u = parent[w];
    const auto s = static_cast<std::size_t>(via[w]);
    g.ideals_[w] = g.ideals_[u];
    const auto& lower = g.ideals_[u];
    for (GElem v = lower.find_first(); v != boost::dynamic_bitset<>::npos; v = lower.find_next(v))
      g.ideals_[w].set(g.right_[v][s]);
  }
  return g;
}

std::string CoxeterGroup::name(GElem w) const {
  if (words_[w].empty()) return "e";
  std::string out;
  for (int s : words_[w]) out += generator_name(s);
  return out;
}

std::optional<GElem> CoxeterGroup::parse(const std::string& text) const {
  if (text == "e") return identity();
  static const std::regex letter(R"(s(\d+))");
  GElem w = identity();
  std::size_t consumed = 0;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), letter); it != std::sregex_iterator(); ++it) {
    if (static_cast<std::size_t>(it->position()) != consumed) return std::nullopt;
    consumed += static_cast<std::size_t>(it->length());
    const int s = std::stoi((*it)[1].str()) - 1;
    if (s < 0 || s >= rank()) return std::nullopt;
    w = right(w, s);
  }
  if (consumed != text.size() || text.empty()) return std::nullopt;
  return w;
}

GElem CoxeterGroup::multiply(GElem a, GElem b) const {
  GElem w = a;
  for (int s : words_[b]) w = right(w, s);
  return w;
}

GElem CoxeterGroup::evaluate(const Word& word) const {
  GElem w = identity();
  for (int s : word) w = right(w, s);
  return w;
}

int CoxeterGroup::element_order(GElem w) const {
  int k = 1;
  for (GElem x = w; x != identity(); x = multiply(x, w)) ++k;
  return k;
}

FinitePoset CoxeterGroup::bruhat_poset(std::span<const GElem> subset) const {
  std::vector<std::string> ids;
  ids.reserve(subset.size());
  for (GElem w : subset) ids.push_back(name(w));
  return FinitePoset::from_relation(std::move(ids),
                                    [&](Elem a, Elem b) { return bruhat_leq(subset[a], subset[b]); });
}

FinitePoset CoxeterGroup::bruhat_poset() const {
  std::vector<GElem> all(order());
  for (GElem w = 0; w < order(); ++w) all[w] = w;
  return bruhat_poset(all);
}

std::vector<GElem> CoxeterGroup::reflections() const {
  std::set<GElem> out;
  for (GElem w = 0; w < order(); ++w)
    for (int s = 0; s < rank(); ++s) out.insert(multiply(right(w, s), inverse(w)));
  return {out.begin(), out.end()};
}

DiagramAutomorphism::DiagramAutomorphism(const CoxeterGroup& w, std::vector<int> images) : images_(std::move(images)) {
  const int r = w.rank();
  if (static_cast<int>(images_.size()) != r) throw Error(ErrorKind::InvalidAutomorphism, "wrong number of generator images");
  for (int s = 0; s < r; ++s) {
    const int t = images_[static_cast<std::size_t>(s)];
    if (t < 0 || t >= r || images_[static_cast<std::size_t>(t)] != s)
      throw Error(ErrorKind::InvalidAutomorphism, "theta is not an involution on the generators");
  }
  for (int s = 0; s < r; ++s)
    for (int t = 0; t < r; ++t)
      if (w.coxeter_m((*this)(s), (*this)(t)) != w.coxeter_m(s, t))
        throw Error(ErrorKind::InvalidAutomorphism, "theta does not preserve the Coxeter matrix");
  on_elements_.assign(w.order(), w.identity());
  // elements come in ShortLex order, so the prefix is already mapped
  for (GElem x = 1; x < w.order(); ++x) {
    const Word& word = w.word(x);
    Word prefix(word.begin(), word.end() - 1);
    on_elements_[x] = w.right(on_elements_[w.evaluate(prefix)], (*this)(word.back()));
  }
}

DiagramAutomorphism DiagramAutomorphism::identity(const CoxeterGroup& w) {
  std::vector<int> images(static_cast<std::size_t>(w.rank()));
  for (int s = 0; s < w.rank(); ++s) images[static_cast<std::size_t>(s)] = s;
  return DiagramAutomorphism(w, std::move(images));
}

bool DiagramAutomorphism::is_identity() const {
  for (std::size_t s = 0; s < images_.size(); ++s)
    if (images_[s] != static_cast<int>(s)) return false;
  return true;
}

DiagramAutomorphism type_a_flip(const CoxeterGroup& w) {
  if (w.spec().type != CoxeterType::A) throw Error(ErrorKind::InvalidAutomorphism, "the flip is defined for type A");
  std::vector<int> images(static_cast<std::size_t>(w.rank()));
  for (int s = 0; s < w.rank(); ++s) images[static_cast<std::size_t>(s)] = w.rank() - 1 - s;
  return DiagramAutomorphism(w, std::move(images));
}

namespace {

std::optional<Elem> position_in(const std::vector<GElem>& sorted, GElem w) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), w);
  if (it == sorted.end() || *it != w) return std::nullopt;
  return static_cast<Elem>(it - sorted.begin());
}

std::vector<GElem> orbit_closure(const CoxeterGroup& w, const std::function<GElem(GElem, int)>& step) {
  std::set<GElem> seen{w.identity()};
  std::deque<GElem> todo{w.identity()};
  while (!todo.empty()) {
    GElem x = todo.front();
    todo.pop_front();
    for (int s = 0; s < w.rank(); ++s) {
      GElem y = step(x, s);
      if (seen.insert(y).second) todo.push_back(y);
    }
  }
  return {seen.begin(), seen.end()};
}

}  // namespace

bool TwistedSets::is_identity(GElem w) const { return identity_index(w).has_value(); }
std::optional<Elem> TwistedSets::involution_index(GElem w) const { return position_in(involutions, w); }
std::optional<Elem> TwistedSets::identity_index(GElem w) const { return position_in(identities, w); }

TwistedSets twisted_sets(const CoxeterGroup& w, const DiagramAutomorphism& theta) {
  TwistedSets out;
  for (GElem x = 0; x < w.order(); ++x)
    if (theta.apply(x) == w.inverse(x)) out.involutions.push_back(x);

  std::set<GElem> image;
  for (GElem x = 0; x < w.order(); ++x) image.insert(w.multiply(theta.apply(x), w.inverse(x)));
  out.identities.assign(image.begin(), image.end());

  auto conj = [&](GElem x, int s) { return w.right(w.left(theta(s), x), s); };
  if (orbit_closure(w, conj) != out.identities)
    throw Error(ErrorKind::VerificationFailed, "twisted identities disagree with the twisted-conjugation orbit of e");
  auto twisted = [&](GElem x, int s) {
    GElem y = conj(x, s);
    return y == x ? w.right(x, s) : y;
  };
  if (orbit_closure(w, twisted) != out.involutions)
    throw Error(ErrorKind::VerificationFailed, "twisted involutions disagree with the twisted orbit of e");
  if (!std::includes(out.involutions.begin(), out.involutions.end(), out.identities.begin(), out.identities.end()))
    throw Error(ErrorKind::VerificationFailed, "twisted identities are not all twisted involutions");

  out.br_involutions = w.bruhat_poset(out.involutions);
  out.br_identities = w.bruhat_poset(out.identities);
  if (out.br_identities.bottom() != out.identity_index(w.identity()))
    throw Error(ErrorKind::VerificationFailed, "e is not the minimum of Br(iota)");
  auto rho = rank_function(out.br_involutions);
  if (!rho) throw Error(ErrorKind::VerificationFailed, "Br(I(theta)) is not graded");
  out.rho = std::move(*rho);
  return out;
}

NofReport nof_check(const CoxeterGroup& w, const DiagramAutomorphism& theta) {
  NofReport r;
  for (int s = 0; s < w.rank(); ++s) {
    const int t = theta(s);
    if (t == s) continue;
    const int order = w.element_order(w.right(w.generator(s), t));
    if (order % 2 != 0) {
      r.holds = false;
      r.failures.push_back({s, t, order});
    }
  }
  return r;
}

TwistedSpm spm_twisted(const CoxeterGroup& w, const DiagramAutomorphism& theta, const TwistedSets& sets, GElem top,
                       int s) {
  auto top_index = sets.identity_index(top);
  if (!top_index) throw Error(ErrorKind::InvalidArgument, w.name(top) + " is not a twisted identity");
  if (s < 0 || s >= w.rank() || !w.is_right_descent(top, s))
    throw Error(ErrorKind::InvalidArgument, "s is not a right descent of " + w.name(top));
  TwistedSpm out;
  out.ideal = principal_ideal(sets.br_identities, *top_index);
  out.map.resize(out.ideal.members.size());
  for (Elem i = 0; i < out.ideal.members.size(); ++i) {
    const GElem x = sets.identities[out.ideal.members[i]];
    const GElem mx = w.right(w.left(theta(s), x), s);
    auto j = sets.identity_index(mx);
    auto local = j ? out.ideal.local(*j) : std::nullopt;
    if (!local)
      throw Error(ErrorKind::NotInIdealClosure, "M(" + w.name(x) + ") = " + w.name(mx) + " leaves the ideal");
    out.map[i] = *local;
  }
  return out;
}

bool full_interval_check(const CoxeterGroup& w, const TwistedSets& sets, GElem u, GElem top) {
  auto strictly_between = [&](const std::vector<GElem>& pool) {
    std::vector<GElem> out;
    for (GElem x : pool)
      if (x != u && x != top && w.bruhat_leq(u, x) && w.bruhat_leq(x, top)) out.push_back(x);
    return out;
  };
  return strictly_between(sets.identities) == strictly_between(sets.involutions);
}

}  // namespace pircon
