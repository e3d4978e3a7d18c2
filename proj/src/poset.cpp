#include "pircon/poset.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <set>

#include "pircon/error.hpp"

namespace pircon {

namespace {

// Topological order of the cover digraph; empty optional on a cycle.
std::optional<std::vector<Elem>> topo_order(const std::vector<std::vector<Elem>>& up) {
  const std::size_t n = up.size();
  std::vector<std::size_t> indeg(n, 0);
  for (const auto& outs : up)
    for (Elem b : outs) ++indeg[b];
  std::vector<Elem> order;
  order.reserve(n);
  std::vector<Elem> stack;
  for (Elem a = n; a-- > 0;)
    if (indeg[a] == 0) stack.push_back(a);
  while (!stack.empty()) {
    Elem a = stack.back();
    stack.pop_back();
    order.push_back(a);
    for (Elem b : up[a])
      if (--indeg[b] == 0) stack.push_back(b);
  }
  if (order.size() != n) return std::nullopt;
  return order;
}

}  // namespace

void FinitePoset::build_index() {
  index_.clear();
  index_.reserve(ids_.size());
  for (Elem i = 0; i < ids_.size(); ++i) {
    if (!index_.emplace(ids_[i], i).second)
      throw Error(ErrorKind::DuplicateId, "duplicate element id '" + ids_[i] + "'");
  }
}

void FinitePoset::close_from_covers() {
  const std::size_t n = ids_.size();
  auto order = topo_order(up_covers_);
  if (!order) throw Error(ErrorKind::CycleDetected, "cover relation contains a cycle");

  up_.assign(n, boost::dynamic_bitset<>(n));
  for (auto it = order->rbegin(); it != order->rend(); ++it) {
    Elem a = *it;
    up_[a].set(a);
    for (Elem b : up_covers_[a]) up_[a] |= up_[b];
  }
  for (Elem a = 0; a < n; ++a) {
    const auto& ups = up_covers_[a];
    for (Elem b : ups) {
      for (Elem c : ups) {
        if (c != b && up_[c][b])
          throw Error(ErrorKind::RedundantCover,
                      "cover (" + ids_[a] + ", " + ids_[b] + ") is implied by " + ids_[c]);
      }
    }
  }
  down_.assign(n, boost::dynamic_bitset<>(n));
  for (Elem a = 0; a < n; ++a)
    for (Elem b = up_[a].find_first(); b != boost::dynamic_bitset<>::npos; b = up_[a].find_next(b))
      down_[b].set(a);
  for (auto& v : up_covers_) std::sort(v.begin(), v.end());
  for (auto& v : down_covers_) std::sort(v.begin(), v.end());
}

FinitePoset FinitePoset::from_covers(std::vector<std::string> ids,
                                     const std::vector<std::pair<std::string, std::string>>& covers) {
  FinitePoset p;
  p.ids_ = std::move(ids);
  p.build_index();
  std::vector<std::pair<Elem, Elem>> idx;
  idx.reserve(covers.size());
  for (const auto& [a, b] : covers) idx.emplace_back(p.index(a), p.index(b));
  return from_cover_indices(std::move(p.ids_), std::move(idx));
}

FinitePoset FinitePoset::from_cover_indices(std::vector<std::string> ids,
                                            std::vector<std::pair<Elem, Elem>> covers) {
  FinitePoset p;
  p.ids_ = std::move(ids);
  p.build_index();
  const std::size_t n = p.ids_.size();
  p.up_covers_.assign(n, {});
  p.down_covers_.assign(n, {});
  std::set<std::pair<Elem, Elem>> seen;
  for (auto [a, b] : covers) {
    if (a >= n || b >= n) throw Error(ErrorKind::UnknownId, "cover index out of range");
    if (a == b) throw Error(ErrorKind::CycleDetected, "self-cover on '" + p.ids_[a] + "'");
    if (!seen.emplace(a, b).second)
      throw Error(ErrorKind::RedundantCover,
                  "cover (" + p.ids_[a] + ", " + p.ids_[b] + ") listed twice");
    p.up_covers_[a].push_back(b);
    p.down_covers_[b].push_back(a);
  }
  p.close_from_covers();
  return p;
}

FinitePoset FinitePoset::from_relation(std::vector<std::string> ids,
                                       const std::function<bool(Elem, Elem)>& leq) {
  FinitePoset p;
  p.ids_ = std::move(ids);
  p.build_index();
  const std::size_t n = p.ids_.size();
  p.up_.assign(n, boost::dynamic_bitset<>(n));
  p.down_.assign(n, boost::dynamic_bitset<>(n));
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (a == b || leq(a, b)) {
        p.up_[a].set(b);
        p.down_[b].set(a);
      }
  for (Elem a = 0; a < n; ++a)
    for (Elem b = a + 1; b < n; ++b)
      if (p.up_[a][b] && p.up_[b][a])
        throw Error(ErrorKind::CycleDetected,
                    "relation is not antisymmetric at " + p.ids_[a] + ", " + p.ids_[b]);
  // transitivity: the up-set of every b above a must sit inside up(a)
  for (Elem a = 0; a < n; ++a)
    for (Elem b = p.up_[a].find_first(); b != boost::dynamic_bitset<>::npos; b = p.up_[a].find_next(b))
      if (!p.up_[b].is_subset_of(p.up_[a]))
        throw Error(ErrorKind::NotComparable, "relation is not transitive at " + p.ids_[a]);

  p.up_covers_.assign(n, {});
  p.down_covers_.assign(n, {});
  for (Elem a = 0; a < n; ++a)
    for (Elem b = p.up_[a].find_first(); b != boost::dynamic_bitset<>::npos; b = p.up_[a].find_next(b)) {
      if (a == b) continue;
      if ((p.up_[a] & p.down_[b]).count() == 2) {
        p.up_covers_[a].push_back(b);
        p.down_covers_[b].push_back(a);
      }
    }
  return p;
}

Elem FinitePoset::index(std::string_view id) const {
  auto e = find(id);
  if (!e) throw Error(ErrorKind::UnknownId, "unknown element id '" + std::string(id) + "'");
  return *e;
}

std::optional<Elem> FinitePoset::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool FinitePoset::covered_by(Elem a, Elem b) const {
  const auto& ups = up_covers_[a];
  return std::binary_search(ups.begin(), ups.end(), b);
}

std::vector<std::pair<Elem, Elem>> FinitePoset::cover_pairs() const {
  std::vector<std::pair<Elem, Elem>> out;
  for (Elem a = 0; a < size(); ++a)
    for (Elem b : up_covers_[a]) out.emplace_back(a, b);
  return out;
}

std::optional<Elem> FinitePoset::bottom() const {
  auto mins = minimal_elements();
  if (mins.size() != 1) return std::nullopt;
  if (up_[mins[0]].count() != size()) return std::nullopt;
  return mins[0];
}

std::optional<Elem> FinitePoset::top() const {
  auto maxs = maximal_elements();
  if (maxs.size() != 1) return std::nullopt;
  if (down_[maxs[0]].count() != size()) return std::nullopt;
  return maxs[0];
}

std::vector<Elem> FinitePoset::minimal_elements() const {
  std::vector<Elem> out;
  for (Elem a = 0; a < size(); ++a)
    if (down_covers_[a].empty()) out.push_back(a);
  return out;
}

std::vector<Elem> FinitePoset::maximal_elements() const {
  std::vector<Elem> out;
  for (Elem a = 0; a < size(); ++a)
    if (up_covers_[a].empty()) out.push_back(a);
  return out;
}

FinitePoset FinitePoset::induced(std::span<const Elem> members) const {
  std::vector<std::string> ids;
  ids.reserve(members.size());
  for (Elem m : members) ids.push_back(ids_[m]);
  return from_relation(std::move(ids), [&](Elem a, Elem b) { return leq(members[a], members[b]); });
}

FinitePoset FinitePoset::relabeled(std::vector<std::string> new_ids) const {
  if (new_ids.size() != size()) throw Error(ErrorKind::UnknownId, "relabel size mismatch");
  FinitePoset p = *this;
  p.ids_ = std::move(new_ids);
  p.build_index();
  return p;
}

bool operator==(const FinitePoset& a, const FinitePoset& b) {
  return a.ids_ == b.ids_ && a.up_ == b.up_;
}

std::optional<Elem> Subposet::local(Elem parent_elem) const {
  auto it = std::find(members.begin(), members.end(), parent_elem);
  if (it == members.end()) return std::nullopt;
  return static_cast<Elem>(it - members.begin());
}

namespace {

IntervalHandle make_interval(const FinitePoset& p, Elem x, Elem y, bool keep_x, bool keep_y) {
  if (!p.leq(x, y))
    throw Error(ErrorKind::NotComparable, p.id(x) + " is not below " + p.id(y));
  IntervalHandle h;
  h.lower = x;
  h.upper = y;
  auto between = p.up_set(x) & p.down_set(y);
  for (Elem z = between.find_first(); z != boost::dynamic_bitset<>::npos; z = between.find_next(z)) {
    if ((z == x && !keep_x) || (z == y && !keep_y)) continue;
    h.members.push_back(z);
  }
  h.poset = p.induced(h.members);
  return h;
}

Subposet from_bits(const FinitePoset& p, const boost::dynamic_bitset<>& bits) {
  Subposet s;
  for (Elem z = bits.find_first(); z != boost::dynamic_bitset<>::npos; z = bits.find_next(z))
    s.members.push_back(z);
  s.poset = p.induced(s.members);
  return s;
}

}  // namespace

IntervalHandle interval(const FinitePoset& p, Elem x, Elem y) { return make_interval(p, x, y, true, true); }
IntervalHandle open_interval(const FinitePoset& p, Elem x, Elem y) { return make_interval(p, x, y, false, false); }
IntervalHandle closed_open_interval(const FinitePoset& p, Elem x, Elem y) {
  return make_interval(p, x, y, true, false);
}
IntervalHandle open_closed_interval(const FinitePoset& p, Elem x, Elem y) {
  return make_interval(p, x, y, false, true);
}

Subposet principal_ideal(const FinitePoset& p, Elem y) { return from_bits(p, p.down_set(y)); }
Subposet principal_filter(const FinitePoset& p, Elem y) { return from_bits(p, p.up_set(y)); }

Subposet induced_subposet(const FinitePoset& p, std::vector<Elem> members) {
  Subposet s;
  s.members = std::move(members);
  s.poset = p.induced(s.members);
  return s;
}

Subposet proper_part(const FinitePoset& p) {
  auto lo = p.bottom();
  auto hi = p.top();
  if (!lo || !hi) throw Error(ErrorKind::NoMaximum, "proper part needs both a minimum and a maximum");
  Subposet s;
  for (Elem z = 0; z < p.size(); ++z)
    if (z != *lo && z != *hi) s.members.push_back(z);
  s.poset = p.induced(s.members);
  return s;
}

std::vector<int> heights(const FinitePoset& p) {
  std::vector<int> h(p.size(), -1);
  for (Elem a : linear_extension(p)) {
    int best = 0;
    for (Elem b : p.lower_covers(a)) best = std::max(best, h[b] + 1);
    h[a] = best;
  }
  return h;
}

std::optional<std::vector<int>> rank_function(const FinitePoset& p) {
  // Graded iff every principal ideal has shortest and longest maximal chains
  // of equal length; compare longest and shortest chain lengths from the
  // minimal elements.
  std::vector<int> longest(p.size(), 0), shortest(p.size(), 0);
  for (Elem a : linear_extension(p)) {
    const auto& downs = p.lower_covers(a);
    if (downs.empty()) continue;
    int lo = std::numeric_limits<int>::max(), hi = 0;
    for (Elem b : downs) {
      lo = std::min(lo, shortest[b] + 1);
      hi = std::max(hi, longest[b] + 1);
    }
    shortest[a] = lo;
    longest[a] = hi;
    if (lo != hi) return std::nullopt;
  }
  return longest;
}

std::optional<Elem> join(const FinitePoset& p, Elem x, Elem y) {
  auto uppers = p.up_set(x) & p.up_set(y);
  for (Elem z = uppers.find_first(); z != boost::dynamic_bitset<>::npos; z = uppers.find_next(z))
    if (uppers.is_subset_of(p.up_set(z))) return z;
  return std::nullopt;
}

std::string chain2_id(std::string_view id, bool beta) {
  return "(" + std::string(id) + (beta ? ",beta)" : ",alpha)");
}

FinitePoset product_with_chain2(const FinitePoset& p) {
  std::vector<std::string> ids;
  ids.reserve(2 * p.size());
  for (Elem a = 0; a < p.size(); ++a) {
    ids.push_back(chain2_id(p.id(a), false));
    ids.push_back(chain2_id(p.id(a), true));
  }
  // Covers of a product: move by a cover in one coordinate only.
  std::vector<std::pair<Elem, Elem>> covers;
  for (Elem a = 0; a < p.size(); ++a) {
    covers.emplace_back(chain2_index(a, false), chain2_index(a, true));
    for (Elem b : p.upper_covers(a)) {
      covers.emplace_back(chain2_index(a, false), chain2_index(b, false));
      covers.emplace_back(chain2_index(a, true), chain2_index(b, true));
    }
  }
  return FinitePoset::from_cover_indices(std::move(ids), std::move(covers));
}

std::vector<Elem> linear_extension(const FinitePoset& p) {
  const std::size_t n = p.size();
  std::vector<std::size_t> indeg(n);
  auto cmp = [&](Elem a, Elem b) { return p.id(a) > p.id(b); };
  std::priority_queue<Elem, std::vector<Elem>, decltype(cmp)> ready(cmp);
  for (Elem a = 0; a < n; ++a) {
    indeg[a] = p.lower_covers(a).size();
    if (indeg[a] == 0) ready.push(a);
  }
  std::vector<Elem> out;
  out.reserve(n);
  while (!ready.empty()) {
    Elem a = ready.top();
    ready.pop();
    out.push_back(a);
    for (Elem b : p.upper_covers(a))
      if (--indeg[b] == 0) ready.push(b);
  }
  return out;
}

bool is_order_isomorphism(const FinitePoset& p, const FinitePoset& q, std::span<const Elem> map) {
  if (p.size() != q.size() || map.size() != p.size()) return false;
  std::vector<char> hit(q.size(), 0);
  for (Elem m : map) {
    if (m >= q.size() || hit[m]) return false;
    hit[m] = 1;
  }
  for (Elem a = 0; a < p.size(); ++a)
    for (Elem b = 0; b < p.size(); ++b)
      if (p.leq(a, b) != q.leq(map[a], map[b])) return false;
  return true;
}

namespace {

struct Signature {
  int height, depth;
  std::size_t ups, downs, above, below;
  auto operator<=>(const Signature&) const = default;
};

std::vector<Signature> signatures(const FinitePoset& p) {
  auto h = heights(p);
  std::vector<int> d(p.size(), 0);
  auto ext = linear_extension(p);
  for (auto it = ext.rbegin(); it != ext.rend(); ++it)
    for (Elem b : p.upper_covers(*it)) d[*it] = std::max(d[*it], d[b] + 1);
  std::vector<Signature> out;
  out.reserve(p.size());
  for (Elem a = 0; a < p.size(); ++a)
    out.push_back({h[a], d[a], p.upper_covers(a).size(), p.lower_covers(a).size(),
                   p.up_set(a).count(), p.down_set(a).count()});
  return out;
}

}  // namespace

std::optional<std::vector<Elem>> is_isomorphic(const FinitePoset& p, const FinitePoset& q,
                                               const IsoOptions& options) {
  if (p.size() > options.max_elements || q.size() > options.max_elements)
    throw Error(ErrorKind::SizeLimitExceeded,
                "isomorphism search capped at " + std::to_string(options.max_elements) + " elements");
  if (p.size() != q.size()) return std::nullopt;
  if (p.cover_pairs().size() != q.cover_pairs().size()) return std::nullopt;
  const std::size_t n = p.size();
  auto sp = signatures(p);
  auto sq = signatures(q);
  {
    auto a = sp, b = sq;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }

  constexpr Elem unset = static_cast<Elem>(-1);
  std::vector<Elem> map(n, unset), inverse(n, unset);
  for (auto [a, b] : options.pins) {
    if (a >= n || b >= n || sp[a] != sq[b]) return std::nullopt;
    if ((map[a] != unset && map[a] != b) || (inverse[b] != unset && inverse[b] != a)) return std::nullopt;
    map[a] = b;
    inverse[b] = a;
  }
  for (auto [a, b] : options.pins)
    for (auto [c, d] : options.pins)
      if (p.leq(a, c) != q.leq(b, d)) return std::nullopt;

  std::vector<Elem> order;
  for (Elem a : linear_extension(p))
    if (map[a] == unset) order.push_back(a);
  std::vector<Elem> placed;
  for (auto [a, b] : options.pins) placed.push_back(a);

  auto consistent = [&](Elem a, Elem b) {
    for (Elem c : placed) {
      Elem d = map[c];
      if (p.leq(a, c) != q.leq(b, d) || p.leq(c, a) != q.leq(d, b)) return false;
    }
    return true;
  };

  std::function<bool(std::size_t)> extend = [&](std::size_t k) -> bool {
    if (k == order.size()) return true;
    Elem a = order[k];
    for (Elem b = 0; b < n; ++b) {
      if (inverse[b] != unset || sp[a] != sq[b] || !consistent(a, b)) continue;
      map[a] = b;
      inverse[b] = a;
      placed.push_back(a);
      if (extend(k + 1)) return true;
      placed.pop_back();
      map[a] = unset;
      inverse[b] = unset;
    }
    return false;
  };
  if (!extend(0)) return std::nullopt;
  return map;
}

FinitePoset make_chain(std::size_t n) {
  std::vector<std::string> ids;
  std::vector<std::pair<Elem, Elem>> covers;
  for (std::size_t i = 0; i < n; ++i) {
    ids.push_back("c" + std::to_string(i));
    if (i > 0) covers.emplace_back(i - 1, i);
  }
  return FinitePoset::from_cover_indices(std::move(ids), std::move(covers));
}

FinitePoset make_antichain(std::size_t n) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("a" + std::to_string(i));
  return FinitePoset::from_cover_indices(std::move(ids), {});
}

FinitePoset make_boolean_lattice(std::size_t rank) {
  const std::size_t n = std::size_t{1} << rank;
  std::vector<std::string> ids;
  std::vector<std::pair<Elem, Elem>> covers;
  for (std::size_t mask = 0; mask < n; ++mask) {
    std::string id = "{";
    for (std::size_t i = 0; i < rank; ++i)
      if (mask >> i & 1) id += std::to_string(i + 1);
    ids.push_back(id + "}");
    for (std::size_t i = 0; i < rank; ++i)
      if (!(mask >> i & 1)) covers.emplace_back(mask, mask | (std::size_t{1} << i));
  }
  return FinitePoset::from_cover_indices(std::move(ids), std::move(covers));
}

FinitePoset add_bottom_top(const FinitePoset& p) {
  std::vector<std::string> ids = p.ids();
  const Elem lo = ids.size(), hi = ids.size() + 1;
  ids.push_back("0^");
  ids.push_back("1^");
  auto covers = p.cover_pairs();
  for (Elem m : p.minimal_elements()) covers.emplace_back(lo, m);
  for (Elem m : p.maximal_elements()) covers.emplace_back(m, hi);
  if (p.empty()) covers.emplace_back(lo, hi);
  return FinitePoset::from_cover_indices(std::move(ids), std::move(covers));
}

}  // namespace pircon
