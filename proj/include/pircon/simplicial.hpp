#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pircon/poset.hpp"

namespace pircon {

/// A face is a strictly increasing sequence of vertex indices.
using Face = std::vector<int>;

/*
  Finite abstract simplicial complex. Faces are kept sorted by (size,
  lexicographic vertex sequence) which fixes the order of boundary matrices
  and collapse sequences. The empty face is part of every non-void complex;
  the void complex has no faces at all.
*/
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Downward closure of `facets` over the named vertices. Vertices that do
  /// not occur in any face are dropped.
  static SimplicialComplex closure(std::vector<std::string> vertex_names,
                                   const std::vector<Face>& facets);
  /// Complex {∅}.
  static SimplicialComplex empty_face_only();

  bool is_void() const { return faces_.empty(); }
  /// -1 for {∅}; -2 for the void complex.
  int dimension() const;

  const std::vector<std::string>& vertex_names() const { return names_; }
  std::size_t vertex_count() const { return names_.size(); }

  const std::vector<Face>& faces() const { return faces_; }
  std::size_t face_count() const { return faces_.size(); }
  std::optional<std::size_t> face_index(const Face& f) const;
  bool contains(const Face& f) const { return face_index(f).has_value(); }
  std::vector<Face> facets() const;
  /// Face counts by dimension, starting at dimension -1.
  std::vector<std::size_t> f_vector() const;

  /// Indices of the codimension-one faces of face i.
  const std::vector<std::size_t>& boundary_of(std::size_t i) const { return boundary_[i]; }
  /// Indices of the faces having face i as a codimension-one face.
  const std::vector<std::size_t>& coboundary_of(std::size_t i) const { return coboundary_[i]; }

  bool is_downward_closed() const;

  /// Face with vertex names instead of indices.
  std::vector<std::string> named(const Face& f) const;

 private:
  void index_faces();

  std::vector<std::string> names_;
  std::vector<Face> faces_;
  std::map<Face, std::size_t> lookup_;
  std::vector<std::vector<std::size_t>> boundary_;
  std::vector<std::vector<std::size_t>> coboundary_;
};

/// Faces are the chains of the poset; vertex names are element ids.
SimplicialComplex order_complex(const FinitePoset& p);

SimplicialComplex link(const SimplicialComplex& complex, const Face& sigma);
SimplicialComplex deletion(const SimplicialComplex& complex, std::span<const int> vertices);
/// Vertices of the second complex are renamed with a trailing "'" where the
/// names clash.
SimplicialComplex join_complex(const SimplicialComplex& a, const SimplicialComplex& b);
SimplicialComplex closure(std::vector<std::string> vertex_names, const std::vector<Face>& family);

/// Reduced integral homology; entry k describes dimension k - 1.
struct HomologyProfile {
  std::vector<std::int64_t> betti;
  std::vector<std::vector<std::int64_t>> torsion;

  static constexpr int first_dimension = -1;

  std::int64_t betti_at(int dim) const;
  bool is_trivial() const;
  /// One free generator in `dim` and nothing else.
  bool is_sphere(int dim) const;
  /// Alternating sum of reduced betti numbers (= reduced Euler characteristic).
  std::int64_t euler_characteristic() const;

  friend bool operator==(const HomologyProfile&, const HomologyProfile&) = default;
};

HomologyProfile reduced_homology(const SimplicialComplex& complex);

struct PseudomanifoldReport {
  int dimension = -2;
  bool pure = false;
  /// Pure and every codimension-one face lies in at most two facets.
  bool pseudomanifold = false;
  /// Codimension-one faces lying in exactly one facet.
  std::vector<Face> boundary_facets;
};

PseudomanifoldReport is_pseudomanifold_with_boundary(const SimplicialComplex& complex);
SimplicialComplex boundary_complex(const SimplicialComplex& complex);

enum class Shape { BallLike, SphereLike, Neither };
std::string_view to_string(Shape shape);

/*
  Homology-level test only: SphereLike needs the homology of a sphere of
  `expected_dim` plus a boundaryless pseudomanifold; BallLike needs trivial
  homology plus a pseudomanifold with non-void boundary. Both require the
  complex to have dimension `expected_dim`.
*/
Shape classify_ball_or_sphere(const SimplicialComplex& complex, int expected_dim);
/// Uses the complex's own dimension.
Shape classify_ball_or_sphere(const SimplicialComplex& complex);

// ---------------------------------------------------------------------------
// Discrete Morse theory

/// partner[i] is the face matched with face i, if any.
struct MorseMatching {
  std::vector<std::optional<std::size_t>> partner;

  std::size_t critical_count() const;
  bool complete() const { return critical_count() == 0; }
};

/// Involutive, and every matched pair is a codimension-one incidence.
bool is_valid_matching(const SimplicialComplex& complex, const MorseMatching& matching);
bool verify_acyclic(const SimplicialComplex& complex, const MorseMatching& matching);

struct ElementaryCollapse {
  std::size_t free_face;
  std::size_t coface;
};

/// Elementary collapses (in order) that take the complex to the void complex.
/// Throws NotCollapsibleWithThisMatching if the matching is incomplete,
/// cyclic, or gets stuck.
std::vector<ElementaryCollapse> collapse_to_void(const SimplicialComplex& complex,
                                                 const MorseMatching& matching);

struct MuMatching {
  /// Proper part of P x 2 with (0^, beta) removed.
  FinitePoset q;
  SimplicialComplex complex;
  MorseMatching matching;
};

/*
  Matching on the order complex of Q = (P x 2) minus its bottom, its top and
  (0^, beta). For a chain C = {(x_1,g_1) < ... < (x_m,g_m)} append the
  sentinel (1^, beta), let j be the first index with g_j = beta and put
  p(C) = (x_j, alpha); C is matched with C xor {p(C)}.
*/
MuMatching morse_matching_mu(const FinitePoset& p);

}  // namespace pircon
