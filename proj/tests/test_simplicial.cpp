#include <doctest.h>

#include "corpus.hpp"
#include "oracles.hpp"
#include "pircon/error.hpp"
#include "pircon/simplicial.hpp"

using namespace pircon;

namespace {

SimplicialComplex complex_of(std::size_t vertices, const std::vector<Face>& facets) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < vertices; ++i) names.push_back("v" + std::to_string(i));
  return SimplicialComplex::closure(names, facets);
}

SimplicialComplex cycle(std::size_t n) {
  std::vector<Face> facets;
  for (std::size_t i = 0; i < n; ++i) facets.push_back({static_cast<int>(i), static_cast<int>((i + 1) % n)});
  for (auto& f : facets) std::sort(f.begin(), f.end());
  return complex_of(n, facets);
}

SimplicialComplex simplex(int d) {
  Face f;
  for (int i = 0; i <= d; ++i) f.push_back(i);
  return complex_of(static_cast<std::size_t>(d + 1), {f});
}

SimplicialComplex simplex_boundary(int d) {
  std::vector<Face> facets;
  for (int skip = 0; skip <= d; ++skip) {
    Face f;
    for (int i = 0; i <= d; ++i)
      if (i != skip) f.push_back(i);
    facets.push_back(f);
  }
  return complex_of(static_cast<std::size_t>(d + 1), facets);
}

// The 6-vertex real projective plane.
SimplicialComplex rp2() {
  return complex_of(6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                        {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {1, 3, 5}, {2, 4, 5}});
}

void check_against_oracles(const SimplicialComplex& c) {
  auto h = reduced_homology(c);
  for (std::int64_t prime : {2, 1000003}) {
    auto mod = oracle::reduced_betti_mod_p(c, prime);
    for (std::size_t k = 0; k < mod.size(); ++k) {
      const int dim = static_cast<int>(k) - 1;
      // Over a large prime only free parts survive; mod 2 also sees 2-torsion.
      std::int64_t expected = h.betti_at(dim);
      if (prime == 2) {
        auto twos = [&](int d) {
          std::int64_t n = 0;
          if (d + 1 >= 0 && static_cast<std::size_t>(d + 1) < h.torsion.size())
            for (auto t : h.torsion[static_cast<std::size_t>(d + 1)]) n += t % 2 == 0;
          return n;
        };
        expected += twos(dim) + twos(dim - 1);
      }
      CHECK(mod[k] == expected);
    }
  }
  // Euler characteristic from face counts.
  auto f = c.f_vector();
  std::int64_t chi = 0;
  for (std::size_t k = 0; k < f.size(); ++k) chi += (k % 2 == 0 ? -1 : 1) * static_cast<std::int64_t>(f[k]);
  CHECK(chi == h.euler_characteristic());
}

}  // namespace

TEST_SUITE("simplicial") {
  TEST_CASE("order complex faces are the chains") {
    for (const auto& p : {corpus::bruhat("A2"), corpus::crown(), make_boolean_lattice(3), make_antichain(2)}) {
      auto c = order_complex(p);
      auto chains = oracle::all_chains(p);
      CHECK(c.face_count() == chains.size());
      for (const auto& chain : chains) {
        Face f;
        for (Elem e : chain) f.push_back(static_cast<int>(e));
        CHECK(c.contains(f));
      }
    }
    CHECK(order_complex(make_antichain(2)).facets().size() == 2);
  }

  TEST_CASE("open interval (e, s1s2s1) in Br(S3) is a 4-cycle") {
    auto w = corpus::group("A2");
    auto p = w.bruhat_poset();
    auto iv = open_interval(p, w.identity(), w.longest());
    auto c = order_complex(iv.poset);
    CHECK(c.vertex_count() == 4);
    CHECK(c.facets().size() == 4);
    CHECK(reduced_homology(c).is_sphere(1));
    CHECK(classify_ball_or_sphere(c, 1) == Shape::SphereLike);
  }

  TEST_CASE("proper part of B2 is a 0-sphere and of B3 a hexagon") {
    auto b2 = proper_part(make_boolean_lattice(2));
    CHECK(reduced_homology(order_complex(b2.poset)).is_sphere(0));
    auto b3 = proper_part(make_boolean_lattice(3));
    auto c = order_complex(b3.poset);
    CHECK(c.facets().size() == 6);
    CHECK(reduced_homology(c).is_sphere(1));
  }

  TEST_CASE("simplices and their boundaries") {
    for (int d = 0; d <= 4; ++d) {
      CHECK(reduced_homology(simplex(d)).is_trivial());
      CHECK(reduced_homology(simplex_boundary(d)).is_sphere(d - 1));
      if (d >= 1) {
        CHECK(classify_ball_or_sphere(simplex(d), d) == Shape::BallLike);
        CHECK(classify_ball_or_sphere(simplex_boundary(d), d - 1) == Shape::SphereLike);
      }
    }
  }

  TEST_CASE("special complexes") {
    auto empty = SimplicialComplex::empty_face_only();
    CHECK(empty.dimension() == -1);
    CHECK(reduced_homology(empty).is_sphere(-1));
    SimplicialComplex void_complex;
    CHECK(void_complex.is_void());
    CHECK(void_complex.dimension() == -2);
    CHECK(reduced_homology(void_complex).is_trivial());
  }

  TEST_CASE("torsion is visible") {
    auto h = reduced_homology(rp2());
    CHECK(h.betti_at(1) == 0);
    CHECK(h.betti_at(2) == 0);
    REQUIRE(h.torsion.size() > 2);
    CHECK(h.torsion[2] == std::vector<std::int64_t>{2});  // H_1 = Z/2
    CHECK(classify_ball_or_sphere(rp2(), 2) == Shape::Neither);
  }

  TEST_CASE("homology agrees with modular rank computations") {
    check_against_oracles(rp2());
    check_against_oracles(cycle(5));
    check_against_oracles(simplex_boundary(3));
    check_against_oracles(order_complex(proper_part(corpus::bruhat("A3")).poset));
    check_against_oracles(order_complex(corpus::bruhat("B2")));
    for (const auto& p : corpus::random_bounded_family(11, 15, 8)) check_against_oracles(order_complex(proper_part(p).poset));
  }

  TEST_CASE("link, deletion, join, closure") {
    auto c = cycle(4);
    CHECK(link(c, {}).faces() == c.faces());
    auto lk = link(c, {0});
    CHECK(lk.vertex_count() == 2);
    CHECK(reduced_homology(lk).is_sphere(0));
    CHECK_THROWS_AS(link(c, {0, 2}), Error);

    std::vector<int> all{0, 1, 2, 3};
    auto gone = deletion(c, all);
    CHECK(gone.dimension() == -1);
    CHECK(gone.face_count() == 1);

    auto s0 = complex_of(2, {{0}, {1}});
    auto joined = join_complex(s0, s0);
    CHECK(joined.vertex_count() == 4);
    CHECK(joined.is_downward_closed());
    CHECK(reduced_homology(joined).is_sphere(1));
    CHECK(classify_ball_or_sphere(joined, 1) == Shape::SphereLike);
    // S^k * S^l has the homology of S^{k+l+1}
    for (int k = 0; k <= 1; ++k)
      for (int l = 0; l <= 1; ++l)
        CHECK(reduced_homology(join_complex(simplex_boundary(k + 1), simplex_boundary(l + 1))).is_sphere(k + l + 1));
  }

  TEST_CASE("pseudomanifolds and boundaries") {
    auto r = is_pseudomanifold_with_boundary(cycle(4));
    CHECK(r.pseudomanifold);
    CHECK(r.boundary_facets.empty());
    auto edge = simplex(1);
    CHECK(boundary_complex(edge).vertex_count() == 2);
    auto bowtie = complex_of(5, {{0, 1, 2}, {0, 3, 4}});
    auto report = is_pseudomanifold_with_boundary(bowtie);
    CHECK(report.pure);
    // every edge is in one triangle; vertex 0 is the pinch, invisible at this level
    CHECK(report.pseudomanifold);
    auto y_shape = complex_of(4, {{0, 1}, {0, 2}, {0, 3}});
    CHECK_FALSE(is_pseudomanifold_with_boundary(y_shape).pseudomanifold);
  }

  TEST_CASE("classification") {
    CHECK(classify_ball_or_sphere(cycle(4), 1) == Shape::SphereLike);
    auto path = complex_of(3, {{0, 1}, {1, 2}});
    CHECK(classify_ball_or_sphere(path, 1) == Shape::BallLike);
    auto wedge = complex_of(7, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 4}, {4, 5}, {5, 6}, {0, 6}});
    CHECK(reduced_homology(wedge).betti_at(1) == 2);
    CHECK(classify_ball_or_sphere(wedge, 1) == Shape::Neither);
    CHECK(classify_ball_or_sphere(cycle(4), 2) == Shape::Neither);
  }
}

TEST_SUITE("morse") {
  TEST_CASE("mu on the 2-chain pairs the empty face with the vertex") {
    auto mu = morse_matching_mu(make_chain(2));
    CHECK(mu.q.size() == 1);
    // (0^,alpha) is the bottom of P x 2, so the only survivor is (1^,alpha)
    CHECK(mu.q.id(0) == "(c1,alpha)");
    CHECK(mu.complex.face_count() == 2);
    CHECK(mu.matching.partner[0] == std::optional<std::size_t>{1});
    CHECK(mu.matching.complete());
    CHECK(collapse_to_void(mu.complex, mu.matching).size() == 1);
  }

  TEST_CASE("mu on B2 is complete, acyclic and collapses") {
    auto mu = morse_matching_mu(make_boolean_lattice(2));
    CHECK(mu.complex.face_count() % 2 == 0);
    CHECK(is_valid_matching(mu.complex, mu.matching));
    CHECK(mu.matching.complete());
    CHECK(verify_acyclic(mu.complex, mu.matching));
    CHECK(collapse_to_void(mu.complex, mu.matching).size() == mu.complex.face_count() / 2);
    CHECK(reduced_homology(mu.complex).is_trivial());
  }

  TEST_CASE("mu is an involution for random posets") {
    for (const auto& p : corpus::random_bounded_family(3, 30, 8)) {
      auto mu = morse_matching_mu(p);
      for (std::size_t i = 0; i < mu.matching.partner.size(); ++i) {
        REQUIRE(mu.matching.partner[i]);
        CHECK(mu.matching.partner[*mu.matching.partner[i]] == i);
      }
      CHECK(verify_acyclic(mu.complex, mu.matching));
    }
  }

  TEST_CASE("empty matching is acyclic but does not collapse") {
    auto c = cycle(4);
    MorseMatching none{std::vector<std::optional<std::size_t>>(c.face_count())};
    CHECK(verify_acyclic(c, none));
    CHECK_THROWS_AS(collapse_to_void(c, none), Error);
  }

  TEST_CASE("an alternating cycle on the square is detected") {
    auto c = cycle(4);  // edges 01, 12, 23, 03
    MorseMatching m{std::vector<std::optional<std::size_t>>(c.face_count())};
    auto pair = [&](Face v, Face e) {
      auto a = *c.face_index(v), b = *c.face_index(e);
      m.partner[a] = b;
      m.partner[b] = a;
    };
    pair({0}, {0, 1});
    pair({1}, {1, 2});
    pair({2}, {2, 3});
    pair({3}, {0, 3});
    CHECK(is_valid_matching(c, m));
    CHECK_FALSE(verify_acyclic(c, m));
    try {
      collapse_to_void(c, m);
      FAIL("expected failure");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotCollapsibleWithThisMatching);
    }
  }

  TEST_CASE("cone matching collapses a triangle") {
    auto t = simplex(2);
    MorseMatching m{std::vector<std::optional<std::size_t>>(t.face_count())};
    // pair every face not containing vertex 0 with its cone over 0
    for (std::size_t i = 0; i < t.face_count(); ++i) {
      const auto& f = t.faces()[i];
      if (!f.empty() && f.front() == 0) continue;
      Face cone = f;
      cone.insert(cone.begin(), 0);
      auto j = *t.face_index(cone);
      m.partner[i] = j;
      m.partner[j] = i;
    }
    CHECK(m.complete());
    CHECK(collapse_to_void(t, m).size() == 4);
  }
}
