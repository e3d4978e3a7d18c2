#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "pircon/poset.hpp"
#include "pircon/spm.hpp"

namespace pircon {

enum class CoxeterType { A, B, D, I2 };

struct CoxeterSpec {
  CoxeterType type = CoxeterType::A;
  int rank = 1;
  int m = 0;  // dihedral order parameter, I2 only
};

/// Parses "A3", "B2", "D4", "I2(5)".
CoxeterSpec parse_coxeter_type(const std::string& text);
std::string to_string(const CoxeterSpec& spec);

using GElem = std::size_t;
using Word = std::vector<int>;  // generator indices, 0-based

/*
  Finite Coxeter group realized by permutations: type A on n+1 points, B as
  signed permutations, D as even-signed permutations (both on 2n points),
  I2(m) as the symmetries of an m-gon. All elements are enumerated by BFS,
  which also gives each element its ShortLex-least reduced word, its length
  and its Bruhat lower ideal.
*/
class CoxeterGroup {
 public:
  static constexpr std::size_t default_max_order = 5040;

  static CoxeterGroup build(const CoxeterSpec& spec, std::size_t max_order = default_max_order);

  const CoxeterSpec& spec() const { return spec_; }
  std::size_t order() const { return perms_.size(); }
  int rank() const { return static_cast<int>(generators_.size()); }
  std::string generator_name(int s) const { return "s" + std::to_string(s + 1); }
  int coxeter_m(int s, int t) const { return m_[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)]; }

  GElem identity() const { return 0; }
  GElem generator(int s) const { return right(identity(), s); }
  int length(GElem w) const { return lengths_[w]; }
  const Word& word(GElem w) const { return words_[w]; }
  std::string name(GElem w) const;
  /// Inverse of name(); accepts any word, reduced or not.
  std::optional<GElem> parse(const std::string& text) const;

  GElem right(GElem w, int s) const { return right_[w][static_cast<std::size_t>(s)]; }
  GElem left(int s, GElem w) const { return left_[w][static_cast<std::size_t>(s)]; }
  GElem multiply(GElem a, GElem b) const;
  GElem inverse(GElem w) const { return inverse_[w]; }
  GElem evaluate(const Word& w) const;
  GElem longest() const { return longest_; }
  /// Multiplicative order of w.
  int element_order(GElem w) const;

  bool is_right_descent(GElem w, int s) const { return length(right(w, s)) < length(w); }
  bool is_left_descent(GElem w, int s) const { return length(left(s, w)) < length(w); }

  bool bruhat_leq(GElem u, GElem w) const { return ideals_[w][u]; }
  const boost::dynamic_bitset<>& bruhat_ideal(GElem w) const { return ideals_[w]; }
  /// Bruhat order induced on `subset`; covers are recomputed inside it.
  FinitePoset bruhat_poset(std::span<const GElem> subset) const;
  FinitePoset bruhat_poset() const;

  std::vector<GElem> reflections() const;

 private:
  CoxeterSpec spec_;
  std::vector<std::vector<int>> generators_;
  std::vector<std::vector<int>> m_;
  std::vector<std::vector<int>> perms_;
  std::vector<int> lengths_;
  std::vector<Word> words_;
  std::vector<std::vector<GElem>> right_;
  std::vector<std::vector<GElem>> left_;
  std::vector<GElem> inverse_;
  std::vector<boost::dynamic_bitset<>> ideals_;
  GElem longest_ = 0;
  std::unordered_map<std::string, GElem> by_perm_;
};

/// Involutive permutation of the generators preserving the Coxeter matrix,
/// extended to the group.
class DiagramAutomorphism {
 public:
  /// InvalidAutomorphism unless `images` is an involution preserving m.
  DiagramAutomorphism(const CoxeterGroup& w, std::vector<int> images);
  static DiagramAutomorphism identity(const CoxeterGroup& w);

  int operator()(int s) const { return images_[static_cast<std::size_t>(s)]; }
  GElem apply(GElem w) const { return on_elements_[w]; }
  const std::vector<int>& images() const { return images_; }
  bool is_identity() const;

 private:
  std::vector<int> images_;
  std::vector<GElem> on_elements_;
};

/// The flip s_i <-> s_{n+1-i} of type A_n.
DiagramAutomorphism type_a_flip(const CoxeterGroup& w);

struct TwistedSets {
  std::vector<GElem> involutions;  // I(theta) = {w : theta(w) = w^-1}
  std::vector<GElem> identities;   // iota(theta) = {theta(w) w^-1}
  FinitePoset br_involutions;      // elements in the order of `involutions`
  FinitePoset br_identities;
  std::vector<int> rho;            // rank function of br_involutions

  bool is_identity(GElem w) const;
  std::optional<Elem> involution_index(GElem w) const;
  std::optional<Elem> identity_index(GElem w) const;
};

/*
  Computes I(theta) by filtering and cross-checks it against the closure of
  {e} under the twisted action; computes iota(theta) as the image of
  w -> theta(w) w^-1 and cross-checks it against the orbit of e under
  x -> theta(s) x s. Also asserts iota within I, e minimal, and Br(I) graded.
*/
TwistedSets twisted_sets(const CoxeterGroup& w, const DiagramAutomorphism& theta);

struct NofFailure {
  int s;
  int theta_s;
  int order;  // of s theta(s)
};

struct NofReport {
  bool holds = true;
  std::vector<NofFailure> failures;
};

NofReport nof_check(const CoxeterGroup& w, const DiagramAutomorphism& theta);

struct TwistedSpm {
  Subposet ideal;  // Br(iota(theta)) below w; members index TwistedSets::identities
  ElemMap map;     // M(x) = theta(s) x s on the ideal
};

/// InvalidArgument unless w is a twisted identity with ws < w;
/// NotInIdealClosure if M leaves the ideal.
TwistedSpm spm_twisted(const CoxeterGroup& w, const DiagramAutomorphism& theta, const TwistedSets& sets,
                       GElem top, int s);

/// {x in iota : u < x < w} == {x in I : u < x < w}.
bool full_interval_check(const CoxeterGroup& w, const TwistedSets& sets, GElem u, GElem top);

}  // namespace pircon
