#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pircon/coxeter.hpp"
#include "pircon/poset.hpp"
#include "pircon/spm.hpp"

namespace pircon {

/*
  A finite set with an action of the generators of W and an integer height.
  action[s][x] is s.x; words act right to left, so act(word, x) applies the
  last letter first.
*/
struct ScaledWSet {
  std::vector<std::string> names;
  std::vector<std::vector<Elem>> action;
  std::vector<int> height;

  std::size_t size() const { return names.size(); }
  int generators() const { return static_cast<int>(action.size()); }
  Elem act(int s, Elem x) const { return action[static_cast<std::size_t>(s)][x]; }
  Elem act(const Word& word, Elem x) const;
};

/// W/W_J with left multiplication; each coset is named after its minimal
/// representative and has that representative's length as height.
ScaledWSet parabolic_quotient(const CoxeterGroup& w, const std::vector<int>& j);

/// The minimal representatives of W/W_J, in the element order of
/// parabolic_quotient(w, j).
std::vector<GElem> minimal_representatives(const CoxeterGroup& w, const std::vector<int>& j);

/// Both sets side by side; names of the second get a trailing "'".
ScaledWSet disjoint_union(const ScaledWSet& a, const ScaledWSet& b);

/// iota(theta) with s.x = theta(s) x s and height rho from Br(I(theta)).
ScaledWSet twisted_conjugation_wset(const CoxeterGroup& w, const DiagramAutomorphism& theta,
                                    const TwistedSets& sets);

enum class QpCheck { Involution, HeightStep, Braid, QP1, QP2 };
std::string_view to_string(QpCheck check);

struct QpViolation {
  QpCheck check;
  Elem x = 0;
  std::optional<GElem> t;  // reflection, for QP1 and QP2
  std::optional<int> s;    // generator
  std::optional<int> s2;   // second generator of a braid relation
};

struct QpVerdict {
  std::vector<QpViolation> violations;
  bool holds() const { return violations.empty(); }
};

/// Checks the W-set structure (involutions, height steps, braid relations)
/// and then QP1 and QP2 by brute force over all reflections.
QpVerdict verify_quasiparabolic(const CoxeterGroup& w, const ScaledWSet& x);

/// Elements x with hgt(x) <= hgt(sx) for all s. UniquenessViolated if some
/// orbit has two of them.
std::vector<Elem> w_minimal_elements(const ScaledWSet& x);

std::vector<Elem> orbit(const ScaledWSet& x, Elem x0);

/// Words s_1...s_k with y = s_1...s_k x0 and k = hgt(y) - hgt(x0).
/// NoReducedExpression if y is not above x0 in its orbit.
Word reduced_expression(const ScaledWSet& x, Elem x0, Elem y);
std::vector<Word> all_reduced_expressions(const ScaledWSet& x, Elem x0, Elem y);

/// Every s_{i1}...s_{ij} x0 for a subword of `word`.
std::vector<Elem> subword_evaluations(const ScaledWSet& x, Elem x0, const Word& word);

struct QpBruhat {
  std::vector<Elem> members;  // W-set element of each poset element
  FinitePoset poset;

  std::optional<Elem> local(Elem x) const;
};

/// Bruhat order on the orbit of x0 via subwords of the lexicographically
/// smallest reduced expression; VerificationFailed unless graded by hgt.
QpBruhat qp_bruhat(const ScaledWSet& x, Elem x0);

/// Element y and expression whose subwords give a different lower set than
/// the default one, if any.
struct ExpressionDependence {
  Elem y;
  Word expression;
};
std::optional<ExpressionDependence> expression_dependence(const ScaledWSet& x, Elem x0);

struct QpLiftingCounterexample {
  Elem x, y;  // poset elements
  int s;
};

/// x <= y and sx !<= sy imply sx <= y and x <= sy.
std::vector<QpLiftingCounterexample> qp_lifting_check(const ScaledWSet& x, const QpBruhat& br);

struct QpSpm {
  Subposet ideal;  // of br.poset
  ElemMap map;
};

/// M(x) = s_1 x on the ideal below z, where s_1 is the first letter of
/// `expression` (default: the lexicographically smallest reduced one).
/// VerificationFailed if M is not an SPM.
QpSpm spm_qp(const ScaledWSet& x, const QpBruhat& br, Elem z, std::optional<Word> expression = std::nullopt);

}  // namespace pircon
