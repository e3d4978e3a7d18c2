#pragma once

// Posets shared by the unit tests and the acceptance suite.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pircon/coxeter.hpp"
#include "pircon/poset.hpp"

namespace corpus {

using pircon::Elem;
using pircon::FinitePoset;

inline pircon::CoxeterGroup group(const std::string& type) {
  return pircon::CoxeterGroup::build(pircon::parse_coxeter_type(type));
}

inline FinitePoset bruhat(const std::string& type) { return group(type).bruhat_poset(); }

// 0 < a, b < c, d < 1 with every a/b below every c/d.
inline FinitePoset crown() {
  return FinitePoset::from_covers({"0", "a", "b", "c", "d", "1"}, {{"0", "a"},
                                                                   {"0", "b"},
                                                                   {"a", "c"},
                                                                   {"a", "d"},
                                                                   {"b", "c"},
                                                                   {"b", "d"},
                                                                   {"c", "1"},
                                                                   {"d", "1"}});
}

// Random bounded poset: `inner` elements ordered by a random relation
// compatible with 0..inner-1, plus 0^ and 1^. mt19937 output is fully
// specified, so the corpus is identical everywhere.
inline FinitePoset random_bounded(std::mt19937& rng, std::size_t inner) {
  std::vector<std::vector<bool>> rel(inner, std::vector<bool>(inner, false));
  for (std::size_t i = 0; i < inner; ++i) {
    rel[i][i] = true;
    for (std::size_t j = i + 1; j < inner; ++j) rel[i][j] = rng() % 3 == 0;
  }
  for (std::size_t k = 0; k < inner; ++k)
    for (std::size_t i = 0; i < inner; ++i)
      for (std::size_t j = 0; j < inner; ++j)
        if (rel[i][k] && rel[k][j]) rel[i][j] = true;
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < inner; ++i) ids.push_back("v" + std::to_string(i));
  auto p = FinitePoset::from_relation(ids, [&](Elem a, Elem b) { return static_cast<bool>(rel[a][b]); });
  return pircon::add_bottom_top(p);
}

inline std::vector<FinitePoset> random_bounded_family(std::uint32_t seed, std::size_t count, std::size_t max_size) {
  std::mt19937 rng(seed);
  std::vector<FinitePoset> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_bounded(rng, rng() % (max_size - 1)));
  return out;
}

}  // namespace corpus
