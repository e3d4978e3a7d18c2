#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pircon/poset.hpp"
#include "pircon/simplicial.hpp"

namespace pircon {

using IdPairs = std::vector<std::pair<std::string, std::string>>;

/*
  Witness that [x, 1^] is isomorphic to [x, c] x 2 for a coatom c, with z
  sent to (x, beta). `phi` lists (element of [x,1^], element of [x,c] x 2)
  by id; the product side uses chain2_id names.
*/
struct CleanWitness {
  std::string coatom;
  IdPairs phi;
};

/// Searches all coatoms c >= x for an isomorphism pinned at z -> (x, beta).
std::optional<CleanWitness> find_clean_witness(const FinitePoset& p, Elem x, Elem z);
/// Checks a stored witness without searching.
bool check_clean_witness(const FinitePoset& p, Elem x, Elem z, const CleanWitness& witness);

struct ZipperVerdict {
  bool distinct = false;
  bool covers_only_xy = false;   // z covers x and y and nothing else
  bool is_join = false;          // z = x v y
  bool same_strict_down = false; // [0^, x) = [0^, y)
  bool proper = false;           // z != 1^
  bool clean = false;
  std::optional<CleanWitness> witness;

  bool zipper() const { return distinct && covers_only_xy && is_join && same_strict_down; }
};

/// Conditions (i)-(iii) and properness only.
ZipperVerdict zipper_conditions(const FinitePoset& p, Elem x, Elem y, Elem z);
/// Full verdict including the cleanness search.
ZipperVerdict detect_zipper(const FinitePoset& p, Elem x, Elem y, Elem z);

/// Identifies x, y, z into one element named `merged_id` (appended last).
/// Throws NotProper unless (x, y, z) is a proper zipper.
FinitePoset zip(const FinitePoset& p, Elem x, Elem y, Elem z, const std::string& merged_id);

struct RemovableVerdict {
  bool removable = false;
  std::optional<Elem> covered;  // the unique element z covers
  std::optional<CleanWitness> witness;
};

RemovableVerdict detect_removable(const FinitePoset& p, Elem z);
/// P minus z; NotRemovable unless z is removable.
FinitePoset remove(const FinitePoset& p, Elem z);

/*
  pi : [0^, M(1^)] x 2 -> P with pi(p, beta) = M(p) when p is covered by
  M(p) and pi(p, gamma) = p otherwise.
*/
struct OrderProjection {
  FinitePoset domain;
  FinitePoset codomain;
  std::vector<Elem> map;                 // domain element -> codomain element
  std::vector<std::vector<Elem>> fibres;  // codomain element -> sorted domain elements
};

/// Throws SpmInvalid if M is not an SPM, NotOrderProjection if the checks on
/// pi fail.
OrderProjection order_projection(const FinitePoset& p, std::span<const Elem> spm);
/// Order-preserving, and every relation x' <= y' of the codomain lifts.
bool is_order_projection(const FinitePoset& domain, const FinitePoset& codomain, std::span<const Elem> map);

/// Poset on the fibres, element i named after codomain element i. Throws
/// NotOrderProjection if it is not isomorphic to the codomain via fibre -> point.
FinitePoset fibre_poset(const OrderProjection& pi);

enum class StepKind { Trivial, Removal, CleanZipping };
std::string_view to_string(StepKind kind);

struct ConvertStep {
  StepKind kind = StepKind::Trivial;
  std::string target;                // element of P this fibre maps to
  std::string merged_id;             // name of the fibre in later step posets
  std::vector<std::string> members;  // fibre members (ids of Q)
  // Removal: x = covered element, z = removed one. Zipping: the triple.
  std::string x, y, z;
  std::optional<CleanWitness> witness;
  std::size_t size_after = 0;
  // Homology shadow of the step, when requested.
  std::optional<Shape> shape_before, shape_after;
};

struct ConvertCertificate {
  FinitePoset source;  // Q = [0^, M(1^)] x 2
  std::vector<ConvertStep> steps;
  IdPairs final_bijection;  // P_t element -> P element
  bool spm_has_fixed_points = false;

  std::size_t count(StepKind kind) const;
};

struct ConvertOptions {
  /// Classify the proper part of every step poset.
  bool homology_shadow = false;
};

/// Runs the fibre-identification pipeline and audits every step; AuditFailed
/// on any failing verdict.
ConvertCertificate convert_sequence(const FinitePoset& p, std::span<const Elem> spm,
                                    const ConvertOptions& options = {});

struct CertificateCheck {
  bool ok = true;
  std::vector<std::string> failures;
};

/// Replays a certificate from its stored source poset and witnesses, with no
/// search, and checks the final bijection onto P.
CertificateCheck verify_convert_certificate(const FinitePoset& p, const ConvertCertificate& cert);

}  // namespace pircon
