#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pircon/poset.hpp"

namespace pircon {

/// A map on the elements of a poset, indexed by element.
using ElemMap = std::vector<Elem>;

std::vector<Elem> fixed_points(std::span<const Elem> map);

/// The four defining conditions of a special partial matching.
enum class SpmAxiom {
  Involution = 1,       // M(M(x)) = x
  TopToCoatom = 2,      // M(1^) is covered by 1^
  CoverNeighbour = 3,   // M(x) covers x, equals x, or is covered by x
  CoverCompatible = 4,  // x covered by y and M(x) != y imply M(x) < M(y)
};

struct SpmViolation {
  SpmAxiom axiom;
  std::vector<Elem> witness;
};

struct SpmVerdict {
  std::vector<SpmViolation> violations;
  std::vector<Elem> fixed;

  bool valid() const { return violations.empty(); }
  /// Valid and without fixed points.
  bool special() const { return valid() && fixed.empty(); }
};

/// Checks every axiom and records each violation with its witnesses.
/// Throws NoMaximum if P has no 1^.
SpmVerdict verify_spm(const FinitePoset& p, std::span<const Elem> map);

struct LiftingCounterexample {
  Elem x, y;
  int clause;  // 1, 2 or 3
};

/*
  Exhaustive check over all x < y with M(y) <= y of
    (1) M(x) <= y,
    (2) M(x) <= x implies M(x) < M(y),
    (3) M(x) >= x implies x <= M(y).
  Any counterexample means M is not an SPM or something upstream is broken.
*/
std::vector<LiftingCounterexample> lifting_check(const FinitePoset& p, std::span<const Elem> map);

struct SpmSearchOptions {
  /// 0 = no limit.
  std::size_t limit = 1;
  /// Only fixed-point-free SPMs (special matchings).
  bool special_only = false;
  std::size_t max_elements = 64;
};

/// Backtracking enumeration in a fixed order: elements by decreasing height,
/// partners tried as lower covers, then fixed, then upper covers.
std::vector<ElemMap> find_spms(const FinitePoset& p, const SpmSearchOptions& options = {});

/// Certificate entry for one principal ideal, by element ids.
struct IdealCertificate {
  std::string ideal_top;
  std::vector<std::pair<std::string, std::string>> spm;  // (x, M(x)) for every x in the ideal
  std::vector<std::string> fixed_points;
};

struct PirconCertificate {
  bool zircon_mode = false;
  bool certified = false;
  std::vector<IdealCertificate> ideals;
  /// First non-minimal element whose ideal has no suitable SPM.
  std::optional<std::string> failing_ideal;
};

/// Candidate SPM for the ideal below `top` (given as the induced subposet),
/// indexed by the subposet's elements.
using SpmProvider = std::function<std::optional<ElemMap>(Elem top, const Subposet& ideal)>;

/// Runs `provider` on the ideal of every non-minimal element and verifies its
/// answer; stops at the first failure.
PirconCertificate certify_with(const FinitePoset& p, bool zircon_mode, const SpmProvider& provider);

PirconCertificate is_pircon(const FinitePoset& p, std::size_t max_elements = 64);
PirconCertificate is_zircon(const FinitePoset& p, std::size_t max_elements = 64);

/// Re-verifies the maps stored in a certificate without searching.
bool verify_certificate(const FinitePoset& p, const PirconCertificate& cert);

/// For an uncertified certificate: every stored ideal verifies and an
/// exhaustive search finds nothing suitable below the failing ideal.
bool verify_failure_certificate(const FinitePoset& p, const PirconCertificate& cert,
                                std::size_t max_elements = 64);

/// The unique minimal element below y; MultipleMinima otherwise.
Elem unique_minimum_below(const FinitePoset& p, Elem y);

}  // namespace pircon
