#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "corpus.hpp"
#include "pircon/error.hpp"
#include "pircon/io.hpp"

using namespace pircon;
using io::Json;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidArgument;
}

std::filesystem::path scratch(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("pircon_io_" + name);
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("posets survive a round trip byte for byte") {
    const std::string text =
        R"({"elements":["e","s1","s2","s1s2","s2s1","s1s2s1"],"covers":[["e","s1"],["e","s2"],["s1","s1s2"],)"
        R"(["s1","s2s1"],["s2","s1s2"],["s2","s2s1"],["s1s2","s1s2s1"],["s2s1","s1s2s1"]]})";
    auto p = io::poset_from_json(Json::parse(text));
    CHECK(is_isomorphic(p, corpus::bruhat("A2")));
    CHECK(io::to_json(p).dump() == text);
    for (const auto& q : corpus::random_bounded_family(3, 10, 8)) CHECK(io::poset_from_json(io::to_json(q)) == q);
  }

  TEST_CASE("malformed posets") {
    CHECK(kind_of([] { io::poset_from_json(Json::parse(R"({"elements":["a"]})")); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { io::poset_from_json(Json::parse(R"({"elements":["a"],"covers":[["a","b"]]})")); }) ==
          ErrorKind::UnknownId);
    CHECK(kind_of([] {
            io::poset_from_json(Json::parse(R"({"elements":["a","b"],"covers":[["a","b"],["b","a"]]})"));
          }) == ErrorKind::CycleDetected);
    CHECK(kind_of([] { io::read_json_file(scratch("broken.json", "{\"elements\": [")); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { io::read_json_file("/nonexistent/poset.json"); }) == ErrorKind::ParseError);
  }

  TEST_CASE("complexes and homology") {
    auto c = order_complex(make_boolean_lattice(3));
    auto back = io::complex_from_json(io::to_json(c));
    CHECK(back.face_count() == c.face_count());
    CHECK(reduced_homology(back) == reduced_homology(c));
    auto h = io::to_json(reduced_homology(order_complex(proper_part(make_boolean_lattice(3)).poset)));
    CHECK(h["first_dimension"] == -1);
    CHECK(h["betti"] == Json::parse("[0,0,1]"));
  }

  TEST_CASE("SPMs") {
    auto c3 = make_chain(3);
    auto m = io::spm_from_json(c3, Json::parse(R"({"spm":{"c0":"c0","c1":"c2","c2":"c1"}})"));
    CHECK(m == ElemMap{0, 2, 1});
    CHECK(io::spm_from_json(c3, io::spm_to_json(c3, m)) == m);
    CHECK(kind_of([&] { io::spm_from_json(c3, Json::parse(R"({"c1":"c2","c2":"c1"})")); }) == ErrorKind::ParseError);
    CHECK(kind_of([&] { io::spm_from_json(c3, Json::parse(R"({"c0":"c9","c1":"c2","c2":"c1"})")); }) ==
          ErrorKind::ParseError);
  }

  TEST_CASE("certificates") {
    auto s3 = corpus::bruhat("A2");
    auto cert = is_zircon(s3);
    auto back = io::pircon_certificate_from_json(io::to_json(cert));
    CHECK(verify_certificate(s3, back));
    CHECK(io::to_json(back) == io::to_json(cert));

    auto c3 = make_chain(3);
    auto failing = io::pircon_certificate_from_json(io::to_json(is_zircon(c3)));
    CHECK(failing.failing_ideal == std::optional<std::string>{"c2"});
    CHECK(verify_failure_certificate(c3, failing));

    auto w = corpus::group("A2");
    ElemMap m;
    for (GElem x = 0; x < w.order(); ++x) m.push_back(w.left(0, x));
    auto p = w.bruhat_poset();
    ConvertOptions opts;
    opts.homology_shadow = true;
    auto conv = convert_sequence(p, m, opts);
    auto conv_back = io::convert_certificate_from_json(io::to_json(conv));
    CHECK(verify_convert_certificate(p, conv_back).ok);
    CHECK(io::to_json(conv_back) == io::to_json(conv));
    CHECK(kind_of([] { io::convert_certificate_from_json(Json::parse(R"({"kind":"convert-certificate"})")); }) ==
          ErrorKind::ParseError);
  }

  TEST_CASE("Coxeter inputs") {
    auto in = io::coxeter_input_from_json(Json::parse(R"({"type":"A","rank":3,"theta":{"s1":"s3","s2":"s2","s3":"s1"}})"));
    CHECK(to_string(in.spec) == "A3");
    CHECK(in.theta == std::vector<int>{2, 1, 0});
    CHECK(to_string(io::coxeter_input_from_json(Json::parse(R"({"type":"I","rank":2,"m":5})")).spec) == "I2(5)");
    CHECK(kind_of([] { io::coxeter_input_from_json(Json::parse(R"({"type":"E","rank":8})")); }) ==
          ErrorKind::ParseError);
    CHECK(kind_of([] { io::coxeter_input_from_json(Json::parse(R"({"type":"A","rank":2,"theta":{"s1":"s2"}})")); }) ==
          ErrorKind::ParseError);
  }

  TEST_CASE("W-sets export") {
    auto x = parabolic_quotient(corpus::group("A2"), {0});
    auto j = io::to_json(x);
    CHECK(j["elements"].size() == 3);
    CHECK(j["action"]["s1"].size() == 3);
  }
}
