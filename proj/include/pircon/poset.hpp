#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace pircon {

/// Internal element handle. Ids are opaque strings; indices are what the
/// algorithms work with.
using Elem = std::size_t;
using Relation = std::vector<boost::dynamic_bitset<>>;

/*
  A finite poset given by its cover relation. The reflexive-transitive
  closure is computed once at construction, both as "up-sets" (row a holds
  every b with a <= b) and "down-sets". Instances are immutable.
*/
class FinitePoset {
 public:
  FinitePoset() = default;

  /// Validates ids and covers; rejects cycles, unknown ids and covers that
  /// are implied transitively by other covers.
  static FinitePoset from_covers(std::vector<std::string> ids,
                                 const std::vector<std::pair<std::string, std::string>>& covers);
  static FinitePoset from_cover_indices(std::vector<std::string> ids,
                                        std::vector<std::pair<Elem, Elem>> covers);

  /// Builds the poset whose order is `leq`, which must already be a partial
  /// order. Covers are recomputed from it.
  static FinitePoset from_relation(std::vector<std::string> ids,
                                   const std::function<bool(Elem, Elem)>& leq);

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }

  const std::string& id(Elem e) const { return ids_[e]; }
  const std::vector<std::string>& ids() const { return ids_; }
  Elem index(std::string_view id) const;
  std::optional<Elem> find(std::string_view id) const;

  bool leq(Elem a, Elem b) const { return up_[a][b]; }
  bool lt(Elem a, Elem b) const { return a != b && up_[a][b]; }
  bool comparable(Elem a, Elem b) const { return up_[a][b] || up_[b][a]; }
  /// a is covered by b.
  bool covered_by(Elem a, Elem b) const;

  const std::vector<Elem>& upper_covers(Elem a) const { return up_covers_[a]; }
  const std::vector<Elem>& lower_covers(Elem a) const { return down_covers_[a]; }
  const boost::dynamic_bitset<>& up_set(Elem a) const { return up_[a]; }
  const boost::dynamic_bitset<>& down_set(Elem a) const { return down_[a]; }

  /// Cover pairs (a, b) with a covered by b, sorted by (a, b).
  std::vector<std::pair<Elem, Elem>> cover_pairs() const;

  std::optional<Elem> bottom() const;
  std::optional<Elem> top() const;
  std::vector<Elem> minimal_elements() const;
  std::vector<Elem> maximal_elements() const;

  /// Induced subposet on `members` (kept in the given order; element i of
  /// the result is members[i]).
  FinitePoset induced(std::span<const Elem> members) const;

  /// Same order, new names.
  FinitePoset relabeled(std::vector<std::string> new_ids) const;

  friend bool operator==(const FinitePoset& a, const FinitePoset& b);

 private:
  void build_index();
  void close_from_covers();

  std::vector<std::string> ids_;
  std::unordered_map<std::string, Elem> index_;
  std::vector<std::vector<Elem>> up_covers_;
  std::vector<std::vector<Elem>> down_covers_;
  Relation up_;
  Relation down_;
};

/// An induced subposet together with the parent indices of its elements.
struct Subposet {
  std::vector<Elem> members;
  FinitePoset poset;

  /// Position of a parent element inside `poset`, if present.
  std::optional<Elem> local(Elem parent_elem) const;
};

struct IntervalHandle : Subposet {
  Elem lower = 0;
  Elem upper = 0;
};

IntervalHandle interval(const FinitePoset& p, Elem x, Elem y);
IntervalHandle open_interval(const FinitePoset& p, Elem x, Elem y);
/// [x, y)
IntervalHandle closed_open_interval(const FinitePoset& p, Elem x, Elem y);
/// (x, y]
IntervalHandle open_closed_interval(const FinitePoset& p, Elem x, Elem y);
Subposet principal_ideal(const FinitePoset& p, Elem y);
Subposet principal_filter(const FinitePoset& p, Elem y);
Subposet induced_subposet(const FinitePoset& p, std::vector<Elem> members);
/// P minus its minimum and maximum. Requires both to exist.
Subposet proper_part(const FinitePoset& p);

/// Rank function if every principal ideal has all maximal chains of equal
/// length; minimal elements get rank 0.
std::optional<std::vector<int>> rank_function(const FinitePoset& p);

/// Number of elements in a longest chain ending at each element, minus one.
std::vector<int> heights(const FinitePoset& p);

std::optional<Elem> join(const FinitePoset& p, Elem x, Elem y);

/*
  P x 2 where 2 = {alpha < beta}. Element (p, gamma) sits at index
  2p + (gamma == beta) and is named "(id,alpha)" / "(id,beta)".
*/
FinitePoset product_with_chain2(const FinitePoset& p);
inline Elem chain2_index(Elem p, bool beta) { return 2 * p + (beta ? 1 : 0); }
std::string chain2_id(std::string_view id, bool beta);

/// Kahn's algorithm; among the currently minimal elements the smallest id
/// (lexicographic) goes first.
std::vector<Elem> linear_extension(const FinitePoset& p);

struct IsoOptions {
  std::size_t max_elements = 64;
  /// Forced pairs (element of P, element of Q).
  std::vector<std::pair<Elem, Elem>> pins;
};

/// Order isomorphism P -> Q as a vector indexed by P's elements.
std::optional<std::vector<Elem>> is_isomorphic(const FinitePoset& p, const FinitePoset& q,
                                               const IsoOptions& options = {});

/// True iff `map` is a bijection preserving and reflecting the order.
bool is_order_isomorphism(const FinitePoset& p, const FinitePoset& q, std::span<const Elem> map);

// Small builders used by tests, the CLI corpus and the acceptance suite.
FinitePoset make_chain(std::size_t n);
FinitePoset make_antichain(std::size_t n);
FinitePoset make_boolean_lattice(std::size_t rank);
/// Adds a new minimum "0^" and maximum "1^".
FinitePoset add_bottom_top(const FinitePoset& p);

}  // namespace pircon
