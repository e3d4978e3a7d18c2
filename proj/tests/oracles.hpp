#pragma once

// Brute-force reference implementations. They share nothing with the
// library beyond the FinitePoset / SimplicialComplex containers and are
// only meant for small inputs.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "pircon/coxeter.hpp"
#include "pircon/poset.hpp"
#include "pircon/simplicial.hpp"

namespace oracle {

using pircon::Elem;

// u <= w iff u is the product of some subword of a reduced word for w.
inline bool bruhat_leq_subword(const pircon::CoxeterGroup& w, pircon::GElem u, pircon::GElem top) {
  const auto& word = w.word(top);
  const std::size_t k = word.size();
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    pircon::GElem g = w.identity();
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1u) g = w.right(g, word[i]);
    if (g == u) return true;
  }
  return false;
}

// One-line notation of a type A element, computed from its word by
// swapping adjacent positions.
inline std::vector<int> one_line(const pircon::CoxeterGroup& w, pircon::GElem g) {
  std::vector<int> perm(static_cast<std::size_t>(w.rank() + 1));
  std::iota(perm.begin(), perm.end(), 1);
  for (int s : w.word(g)) std::swap(perm[static_cast<std::size_t>(s)], perm[static_cast<std::size_t>(s + 1)]);
  return perm;
}

// Tableau criterion for the symmetric group: u <= w iff for every k the
// sorted first k entries of u are dominated by those of w.
inline bool bruhat_leq_tableau(const std::vector<int>& u, const std::vector<int>& w) {
  for (std::size_t k = 1; k <= u.size(); ++k) {
    std::vector<int> a(u.begin(), u.begin() + static_cast<long>(k));
    std::vector<int> b(w.begin(), w.begin() + static_cast<long>(k));
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (std::size_t i = 0; i < k; ++i)
      if (a[i] > b[i]) return false;
  }
  return true;
}

inline int inversions(const std::vector<int>& perm) {
  int n = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j) n += perm[i] > perm[j];
  return n;
}

// Covers recomputed from the order alone.
inline bool covers(const pircon::FinitePoset& p, Elem a, Elem b) {
  if (!p.lt(a, b)) return false;
  for (Elem c = 0; c < p.size(); ++c)
    if (p.lt(a, c) && p.lt(c, b)) return false;
  return true;
}

// Every chain of P (including the empty one) as a sorted set of indices.
inline std::set<std::vector<Elem>> all_chains(const pircon::FinitePoset& p) {
  std::set<std::vector<Elem>> out;
  const std::size_t n = p.size();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<Elem> chain;
    for (Elem i = 0; i < n; ++i)
      if (mask >> i & 1u) chain.push_back(i);
    bool ok = true;
    for (std::size_t i = 0; ok && i < chain.size(); ++i)
      for (std::size_t j = i + 1; ok && j < chain.size(); ++j) ok = p.comparable(chain[i], chain[j]);
    if (ok) out.insert(chain);
  }
  return out;
}

inline std::int64_t mod_pow(std::int64_t b, std::int64_t e, std::int64_t m) {
  std::int64_t r = 1;
  for (b %= m; e > 0; e >>= 1, b = b * b % m)
    if (e & 1) r = r * b % m;
  return r;
}

// Rank over Z/p of a dense matrix.
inline std::size_t rank_mod_p(std::vector<std::vector<std::int64_t>> a, std::int64_t p) {
  std::size_t rank = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && ((a[piv][c] % p) + p) % p == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    const std::int64_t inv = mod_pow(((a[rank][c] % p) + p) % p, p - 2, p);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank) continue;
      const std::int64_t f = ((a[r][c] % p) + p) % p * inv % p;
      if (f == 0) continue;
      for (std::size_t k = 0; k < cols; ++k) a[r][k] = ((a[r][k] - f * a[rank][k]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

// Reduced Betti numbers over Z/p, from dimension -1 up to the top
// dimension, from dense augmented boundary matrices.
inline std::vector<std::int64_t> reduced_betti_mod_p(const pircon::SimplicialComplex& c, std::int64_t p) {
  if (c.is_void()) return {};
  const auto& faces = c.faces();
  const int top = c.dimension();
  std::vector<std::vector<std::size_t>> by_size(static_cast<std::size_t>(top + 2));
  for (std::size_t i = 0; i < faces.size(); ++i) by_size[faces[i].size()].push_back(i);
  // rank of the boundary from faces of size k to size k-1
  std::vector<std::size_t> rk(by_size.size() + 1, 0);
  for (std::size_t k = 1; k < by_size.size(); ++k) {
    std::vector<std::vector<std::int64_t>> m(by_size[k - 1].size(), std::vector<std::int64_t>(by_size[k].size(), 0));
    for (std::size_t col = 0; col < by_size[k].size(); ++col) {
      const auto& f = faces[by_size[k][col]];
      for (std::size_t drop = 0; drop < f.size(); ++drop) {
        pircon::Face g;
        for (std::size_t i = 0; i < f.size(); ++i)
          if (i != drop) g.push_back(f[i]);
        const auto row = std::find_if(by_size[k - 1].begin(), by_size[k - 1].end(),
                                      [&](std::size_t idx) { return faces[idx] == g; }) -
                         by_size[k - 1].begin();
        m[static_cast<std::size_t>(row)][col] = drop % 2 == 0 ? 1 : -1;
      }
    }
    rk[k] = rank_mod_p(std::move(m), p);
  }
  std::vector<std::int64_t> betti;
  for (std::size_t k = 0; k < by_size.size(); ++k)
    betti.push_back(static_cast<std::int64_t>(by_size[k].size() - rk[k] - rk[k + 1]));
  return betti;
}

inline bool satisfies_spm_axioms(const pircon::FinitePoset& p, const std::vector<Elem>& m, Elem top) {
  const std::size_t n = p.size();
  for (Elem x = 0; x < n; ++x)
    if (m[m[x]] != x) return false;
  if (!covers(p, m[top], top)) return false;
  for (Elem x = 0; x < n; ++x)
    if (m[x] != x && !covers(p, x, m[x]) && !covers(p, m[x], x)) return false;
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      if (covers(p, x, y) && m[x] != y && !p.lt(m[x], m[y])) return false;
  return true;
}

namespace detail {
inline void involutions(std::vector<Elem>& m, Elem next, bool allow_fixed, std::vector<std::vector<Elem>>& out) {
  const std::size_t n = m.size();
  while (next < n && m[next] != static_cast<Elem>(-1)) ++next;
  if (next == n) {
    out.push_back(m);
    return;
  }
  if (allow_fixed) {
    m[next] = next;
    involutions(m, next + 1, allow_fixed, out);
    m[next] = static_cast<Elem>(-1);
  }
  for (Elem y = next + 1; y < n; ++y) {
    if (m[y] != static_cast<Elem>(-1)) continue;
    m[next] = y;
    m[y] = next;
    involutions(m, next + 1, allow_fixed, out);
    m[next] = m[y] = static_cast<Elem>(-1);
  }
}
}  // namespace detail

// All SPMs (or only special matchings) by trying every involution.
inline std::set<std::vector<Elem>> all_spms(const pircon::FinitePoset& p, bool special_only) {
  std::set<std::vector<Elem>> out;
  Elem top = 0;
  for (Elem x = 0; x < p.size(); ++x)
    if (p.up_set(x).count() == 1) top = x;
  std::vector<Elem> m(p.size(), static_cast<Elem>(-1));
  std::vector<std::vector<Elem>> candidates;
  detail::involutions(m, 0, !special_only, candidates);
  for (auto& c : candidates)
    if (satisfies_spm_axioms(p, c, top)) out.insert(c);
  return out;
}

}  // namespace oracle
