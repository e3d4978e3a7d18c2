#include <doctest.h>

#include "corpus.hpp"
#include "pircon/error.hpp"
#include "pircon/spm.hpp"
#include "pircon/transform.hpp"

using namespace pircon;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidArgument;
}

std::vector<std::string> names(const FinitePoset& p, const std::vector<Elem>& elems) {
  std::vector<std::string> out;
  for (Elem e : elems) out.push_back(p.id(e));
  std::sort(out.begin(), out.end());
  return out;
}

// Br(S3) with M(x) = s1 x.
struct S3Example {
  CoxeterGroup w = corpus::group("A2");
  FinitePoset p = w.bruhat_poset();
  ElemMap m;
  S3Example() {
    for (GElem x = 0; x < w.order(); ++x) m.push_back(w.left(0, x));
  }
};

ElemMap chain3_spm(const FinitePoset& c3) {
  return {c3.index("c0"), c3.index("c2"), c3.index("c1")};
}

}  // namespace

TEST_SUITE("transform") {
  TEST_CASE("zipper detection") {
    auto b2 = make_boolean_lattice(2);
    auto v = detect_zipper(b2, b2.index("{1}"), b2.index("{2}"), b2.index("{12}"));
    CHECK(v.zipper());
    CHECK_FALSE(v.proper);
    CHECK(kind_of([&] { zip(b2, b2.index("{1}"), b2.index("{2}"), b2.index("{12}"), "xy"); }) ==
          ErrorKind::NotProper);

    auto c3 = make_chain(3);
    for (Elem x = 0; x < 3; ++x)
      for (Elem y = 0; y < 3; ++y)
        for (Elem z = 0; z < 3; ++z) CHECK_FALSE(detect_zipper(c3, x, y, z).zipper());
  }

  TEST_CASE("the S3 source poset has a clean zipper") {
    S3Example ex;
    auto pi = order_projection(ex.p, ex.m);
    const auto& q = pi.domain;
    CHECK(q.size() == 8);
    const Elem x = q.index("(s1,alpha)"), y = q.index("(e,beta)"), z = q.index("(s1,beta)");
    auto v = detect_zipper(q, x, y, z);
    CHECK(v.zipper());
    CHECK(v.proper);
    CHECK(v.clean);
    REQUIRE(v.witness);
    CHECK(check_clean_witness(q, x, z, *v.witness));
    auto zipped = zip(q, x, y, z, "xy");
    CHECK(zipped.size() == 6);
    CHECK(is_isomorphic(zipped, ex.p));
    // a fake witness is refused
    auto bad = *v.witness;
    std::swap(bad.phi[0].second, bad.phi[1].second);
    CHECK_FALSE(check_clean_witness(q, x, z, bad));
  }

  TEST_CASE("zipping keeps unrelated relations") {
    S3Example ex;
    auto q = order_projection(ex.p, ex.m).domain;
    auto zipped = zip(q, q.index("(s1,alpha)"), q.index("(e,beta)"), q.index("(s1,beta)"), "xy");
    for (Elem a = 0; a < q.size(); ++a)
      for (Elem b = 0; b < q.size(); ++b) {
        auto a2 = zipped.find(q.id(a)), b2 = zipped.find(q.id(b));
        if (a2 && b2) CHECK(q.leq(a, b) == zipped.leq(*a2, *b2));
      }
  }

  TEST_CASE("removable elements") {
    auto c3 = make_chain(3);
    auto q = order_projection(c3, chain3_spm(c3)).domain;
    CHECK(q.size() == 4);
    auto v = detect_removable(q, q.index("(c0,beta)"));
    CHECK(v.removable);
    CHECK(v.covered == q.index("(c0,alpha)"));
    REQUIRE(v.witness);
    // both coatoms (c0,beta) and (c1,alpha) split the square as [x,c] x 2
    CHECK((v.witness->coatom == "(c0,beta)" || v.witness->coatom == "(c1,alpha)"));
    CHECK(check_clean_witness(q, q.index("(c0,alpha)"), q.index("(c0,beta)"), *v.witness));
    CHECK(remove(q, q.index("(c0,beta)")).size() == 3);

    CHECK(kind_of([&] { detect_removable(q, *q.top()); }) == ErrorKind::NotRemovable);
    auto crown = corpus::crown();
    CHECK_FALSE(detect_removable(crown, crown.index("c")).removable);  // covers a and b
    CHECK(kind_of([&] { remove(crown, crown.index("c")); }) == ErrorKind::NotRemovable);
  }

  TEST_CASE("order projection fibres") {
    auto c2 = make_chain(2);
    auto pi2 = order_projection(c2, ElemMap{1, 0});
    CHECK(names(pi2.domain, pi2.fibres[0]) == std::vector<std::string>{"(c0,alpha)"});
    CHECK(names(pi2.domain, pi2.fibres[1]) == std::vector<std::string>{"(c0,beta)"});

    auto c3 = make_chain(3);
    auto pi3 = order_projection(c3, chain3_spm(c3));
    CHECK(names(pi3.domain, pi3.fibres[0]) == std::vector<std::string>{"(c0,alpha)", "(c0,beta)"});

    S3Example ex;
    auto pi = order_projection(ex.p, ex.m);
    CHECK(names(pi.domain, pi.fibres[ex.p.index("s1")]) ==
          std::vector<std::string>{"(e,beta)", "(s1,alpha)", "(s1,beta)"});
    CHECK(is_order_projection(pi.domain, pi.codomain, pi.map));
    auto fib = fibre_poset(pi);
    CHECK(fib.size() == 6);
    CHECK(is_isomorphic(fib, ex.p));

    CHECK(kind_of([&] { order_projection(c2, ElemMap{0, 1}); }) == ErrorKind::SpmInvalid);
  }

  TEST_CASE("a map that is not an order projection") {
    // c0 < c1 lands on two incomparable elements
    auto domain = make_chain(2);
    auto codomain = make_antichain(2);
    CHECK_FALSE(is_order_projection(domain, codomain, std::vector<Elem>{0, 1}));
    // order-preserving and onto, but c0 < c1 has no preimage relation
    CHECK_FALSE(is_order_projection(codomain, domain, std::vector<Elem>{0, 1}));
  }

  TEST_CASE("conversion of the hand examples") {
    auto c2 = make_chain(2);
    auto cert2 = convert_sequence(c2, ElemMap{1, 0});
    CHECK(cert2.count(StepKind::Trivial) == 2);
    CHECK(cert2.count(StepKind::Removal) + cert2.count(StepKind::CleanZipping) == 0);

    auto c3 = make_chain(3);
    auto cert3 = convert_sequence(c3, chain3_spm(c3));
    CHECK(cert3.count(StepKind::Removal) == 1);
    CHECK(cert3.count(StepKind::CleanZipping) == 0);
    CHECK(cert3.spm_has_fixed_points);

    S3Example ex;
    ConvertOptions opts;
    opts.homology_shadow = true;
    auto cert = convert_sequence(ex.p, ex.m, opts);
    CHECK(cert.source.size() == 8);
    CHECK(cert.count(StepKind::CleanZipping) == 1);
    CHECK(cert.count(StepKind::Removal) == 0);
    CHECK(cert.steps.back().size_after == 6);
    for (const auto& step : cert.steps) {
      REQUIRE(step.shape_before);
      REQUIRE(step.shape_after);
      if (step.kind == StepKind::CleanZipping && *step.shape_before == Shape::BallLike)
        CHECK(*step.shape_after == Shape::BallLike);
    }
    CHECK(cert.steps.back().shape_after == Shape::SphereLike);

    CHECK(verify_convert_certificate(c2, cert2).ok);
    CHECK(verify_convert_certificate(c3, cert3).ok);
    CHECK(verify_convert_certificate(ex.p, cert).ok);
  }

  TEST_CASE("tampered conversion certificates fail") {
    S3Example ex;
    auto cert = convert_sequence(ex.p, ex.m);
    auto retag = cert;
    for (auto& s : retag.steps)
      if (s.kind == StepKind::CleanZipping) s.kind = StepKind::Removal;
    CHECK_FALSE(verify_convert_certificate(ex.p, retag).ok);

    auto bad_bijection = cert;
    std::swap(bad_bijection.final_bijection[0].second, bad_bijection.final_bijection.back().second);
    CHECK_FALSE(verify_convert_certificate(ex.p, bad_bijection).ok);

    auto bad_witness = cert;
    for (auto& s : bad_witness.steps)
      if (s.witness) s.witness->coatom = s.x;
    CHECK_FALSE(verify_convert_certificate(ex.p, bad_witness).ok);

    CHECK_FALSE(verify_convert_certificate(make_chain(6), cert).ok);
  }

  TEST_CASE("every SPM of small posets converts") {
    std::vector<FinitePoset> posets{make_boolean_lattice(2), make_boolean_lattice(3), corpus::crown(),
                                    make_chain(4), corpus::bruhat("A2"), corpus::bruhat("B2")};
    for (auto& p : corpus::random_bounded_family(9, 30, 8)) posets.push_back(std::move(p));
    std::size_t converted = 0;
    for (const auto& p : posets) {
      SpmSearchOptions all;
      all.limit = 0;
      for (const auto& m : find_spms(p, all)) {
        auto cert = convert_sequence(p, m);
        const auto zips = cert.count(StepKind::CleanZipping), removals = cert.count(StepKind::Removal);
        CHECK(cert.source.size() - 2 * zips - removals == p.size());
        CHECK((removals > 0) == !fixed_points(m).empty());
        CHECK(verify_convert_certificate(p, cert).ok);
        ++converted;
      }
    }
    CHECK(converted >= 50);
  }
}
