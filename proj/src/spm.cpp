#include "pircon/spm.hpp"

#include <algorithm>
#include <numeric>

#include "pircon/error.hpp"

namespace pircon {

std::vector<Elem> fixed_points(std::span<const Elem> map) {
  std::vector<Elem> out;
  for (Elem x = 0; x < map.size(); ++x)
    if (map[x] == x) out.push_back(x);
  return out;
}

SpmVerdict verify_spm(const FinitePoset& p, std::span<const Elem> map) {
  auto top = p.top();
  if (!top) throw Error(ErrorKind::NoMaximum, "an SPM needs a poset with a maximum");
  SpmVerdict v;
  const std::size_t n = p.size();
  if (map.size() != n) {
    v.violations.push_back({SpmAxiom::Involution, {}});
    return v;
  }
  for (Elem x = 0; x < n; ++x)
    if (map[x] >= n) {
      v.violations.push_back({SpmAxiom::Involution, {x}});
      return v;
    }
  for (Elem x = 0; x < n; ++x)
    if (map[map[x]] != x) v.violations.push_back({SpmAxiom::Involution, {x, map[x]}});
  if (!p.covered_by(map[*top], *top)) v.violations.push_back({SpmAxiom::TopToCoatom, {*top, map[*top]}});
  for (Elem x = 0; x < n; ++x) {
    const Elem m = map[x];
    if (m != x && !p.covered_by(m, x) && !p.covered_by(x, m))
      v.violations.push_back({SpmAxiom::CoverNeighbour, {x, m}});
  }
  for (auto [x, y] : p.cover_pairs())
    if (map[x] != y && !p.lt(map[x], map[y])) v.violations.push_back({SpmAxiom::CoverCompatible, {x, y}});
  v.fixed = fixed_points(map);
  return v;
}

std::vector<LiftingCounterexample> lifting_check(const FinitePoset& p, std::span<const Elem> map) {
  std::vector<LiftingCounterexample> out;
  const std::size_t n = p.size();
  for (Elem y = 0; y < n; ++y) {
    if (!p.leq(map[y], y)) continue;
    for (Elem x = 0; x < n; ++x) {
      if (!p.lt(x, y)) continue;
      const Elem mx = map[x], my = map[y];
      if (!p.leq(mx, y)) out.push_back({x, y, 1});
      if (p.leq(mx, x) && !p.lt(mx, my)) out.push_back({x, y, 2});
      if (p.leq(x, mx) && !p.leq(x, my)) out.push_back({x, y, 3});
    }
  }
  return out;
}

namespace {

class SpmSearch {
 public:
  SpmSearch(const FinitePoset& p, const SpmSearchOptions& options)
      : p_(p), options_(options), map_(p.size(), unset) {
    auto h = heights(p);
    order_.resize(p.size());
    std::iota(order_.begin(), order_.end(), Elem{0});
    std::stable_sort(order_.begin(), order_.end(), [&](Elem a, Elem b) { return h[a] > h[b]; });
    top_ = *p.top();
  }

  std::vector<ElemMap> run() {
    descend(0);
    return std::move(found_);
  }

 private:
  static constexpr Elem unset = static_cast<Elem>(-1);

  bool done() const { return options_.limit != 0 && found_.size() >= options_.limit; }

  // Axiom 4 on every cover touching u whose endpoints are both assigned.
  bool compatible_at(Elem u) const {
    for (Elem b : p_.upper_covers(u))
      if (map_[b] != unset && map_[u] != b && !p_.lt(map_[u], map_[b])) return false;
    for (Elem a : p_.lower_covers(u))
      if (map_[a] != unset && map_[a] != u && !p_.lt(map_[a], map_[u])) return false;
    return true;
  }

  void try_pair(std::size_t k, Elem x, Elem y) {
    map_[x] = y;
    map_[y] = x;
    if (compatible_at(x) && (x == y || compatible_at(y))) descend(k + 1);
    map_[x] = unset;
    map_[y] = unset;
  }

  void descend(std::size_t k) {
    if (done()) return;
    while (k < order_.size() && map_[order_[k]] != unset) ++k;
    if (k == order_.size()) {
      found_.push_back(map_);
      return;
    }
    const Elem x = order_[k];
    for (Elem y : p_.lower_covers(x)) {
      if (map_[y] == unset) try_pair(k, x, y);
      if (done()) return;
    }
    if (x == top_) return;
    if (!options_.special_only) {
      try_pair(k, x, x);
      if (done()) return;
    }
    for (Elem y : p_.upper_covers(x)) {
      if (map_[y] == unset) try_pair(k, x, y);
      if (done()) return;
    }
  }

  const FinitePoset& p_;
  SpmSearchOptions options_;
  ElemMap map_;
  std::vector<Elem> order_;
  Elem top_ = 0;
  std::vector<ElemMap> found_;
};

IdealCertificate make_entry(const FinitePoset& p, const Subposet& ideal, Elem top, const ElemMap& local_map) {
  IdealCertificate c;
  c.ideal_top = p.id(top);
  for (Elem x = 0; x < local_map.size(); ++x) {
    c.spm.emplace_back(ideal.poset.id(x), ideal.poset.id(local_map[x]));
    if (local_map[x] == x) c.fixed_points.push_back(ideal.poset.id(x));
  }
  return c;
}

}  // namespace

std::vector<ElemMap> find_spms(const FinitePoset& p, const SpmSearchOptions& options) {
  if (p.size() > options.max_elements)
    throw Error(ErrorKind::SizeLimitExceeded,
                "SPM search capped at " + std::to_string(options.max_elements) + " elements");
  if (!p.top()) throw Error(ErrorKind::NoMaximum, "an SPM needs a poset with a maximum");
  return SpmSearch(p, options).run();
}

PirconCertificate certify_with(const FinitePoset& p, bool zircon_mode, const SpmProvider& provider) {
  PirconCertificate cert;
  cert.zircon_mode = zircon_mode;
  for (Elem top = 0; top < p.size(); ++top) {
    if (p.lower_covers(top).empty()) continue;
    Subposet ideal = principal_ideal(p, top);
    auto candidate = provider(top, ideal);
    bool ok = false;
    if (candidate) {
      auto verdict = verify_spm(ideal.poset, *candidate);
      ok = zircon_mode ? verdict.special() : verdict.valid();
    }
    if (!ok) {
      cert.failing_ideal = p.id(top);
      return cert;
    }
    cert.ideals.push_back(make_entry(p, ideal, top, *candidate));
  }
  cert.certified = true;
  return cert;
}

namespace {

PirconCertificate search_certificate(const FinitePoset& p, bool zircon_mode, std::size_t max_elements) {
  return certify_with(p, zircon_mode, [&](Elem, const Subposet& ideal) -> std::optional<ElemMap> {
    SpmSearchOptions opts;
    opts.limit = 1;
    opts.special_only = zircon_mode;
    opts.max_elements = max_elements;
    auto found = find_spms(ideal.poset, opts);
    if (found.empty()) return std::nullopt;
    return found.front();
  });
}

}  // namespace

PirconCertificate is_pircon(const FinitePoset& p, std::size_t max_elements) {
  return search_certificate(p, false, max_elements);
}

PirconCertificate is_zircon(const FinitePoset& p, std::size_t max_elements) {
  return search_certificate(p, true, max_elements);
}

namespace {

bool stored_ideals_verify(const FinitePoset& p, const PirconCertificate& cert) {
  for (const auto& entry : cert.ideals) {
    auto top = p.find(entry.ideal_top);
    if (!top || p.lower_covers(*top).empty()) return false;
    Subposet ideal = principal_ideal(p, *top);
    if (entry.spm.size() != ideal.poset.size()) return false;
    ElemMap map(ideal.poset.size(), static_cast<Elem>(-1));
    for (const auto& [x, mx] : entry.spm) {
      auto a = ideal.poset.find(x);
      auto b = ideal.poset.find(mx);
      if (!a || !b) return false;
      map[*a] = *b;
    }
    auto verdict = verify_spm(ideal.poset, map);
    if (!(cert.zircon_mode ? verdict.special() : verdict.valid())) return false;
  }
  return true;
}

}  // namespace

bool verify_certificate(const FinitePoset& p, const PirconCertificate& cert) {
  if (!cert.certified) return false;
  std::size_t expected = 0;
  for (Elem top = 0; top < p.size(); ++top)
    if (!p.lower_covers(top).empty()) ++expected;
  return cert.ideals.size() == expected && stored_ideals_verify(p, cert);
}

bool verify_failure_certificate(const FinitePoset& p, const PirconCertificate& cert, std::size_t max_elements) {
  if (cert.certified || !cert.failing_ideal) return false;
  auto top = p.find(*cert.failing_ideal);
  if (!top || p.lower_covers(*top).empty() || !stored_ideals_verify(p, cert)) return false;
  SpmSearchOptions opts;
  opts.special_only = cert.zircon_mode;
  opts.max_elements = max_elements;
  return find_spms(principal_ideal(p, *top).poset, opts).empty();
}

Elem unique_minimum_below(const FinitePoset& p, Elem y) {
  std::vector<Elem> minima;
  const auto& below = p.down_set(y);
  for (Elem x = below.find_first(); x != boost::dynamic_bitset<>::npos; x = below.find_next(x))
    if (p.lower_covers(x).empty()) minima.push_back(x);
  if (minima.size() != 1)
    throw Error(ErrorKind::MultipleMinima,
                std::to_string(minima.size()) + " minimal elements below " + p.id(y));
  return minima.front();
}

}  // namespace pircon
