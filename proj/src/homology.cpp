#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "pircon/error.hpp"
#include "pircon/simplicial.hpp"

namespace pircon {

namespace {

using BigInt = boost::multiprecision::cpp_int;
using SparseColumn = std::vector<std::pair<std::size_t, BigInt>>;  // sorted by row

struct Divisors {
  std::size_t rank = 0;
  std::vector<BigInt> nontrivial;  // diagonal entries > 1 of the Smith form
};

// col_a := col_a - factor * col_b
void axpy(SparseColumn& a, const SparseColumn& b, const BigInt& factor) {
  SparseColumn out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(std::move(a[i++]));
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, -factor * b[j].second);
      ++j;
    } else {
      BigInt v = a[i].second - factor * b[j].second;
      if (v != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  a = std::move(out);
}

const BigInt* entry(const SparseColumn& c, std::size_t row) {
  auto it = std::lower_bound(c.begin(), c.end(), row,
                             [](const auto& e, std::size_t r) { return e.first < r; });
  if (it == c.end() || it->first != row) return nullptr;
  return &it->second;
}

// Smith normal form of a small dense matrix, in place.
void dense_smith(std::vector<std::vector<BigInt>>& m, Divisors& out) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // smallest nonzero |entry| in the trailing block
    std::size_t pr = rows, pc = cols;
    for (std::size_t r = t; r < rows; ++r)
      for (std::size_t c = t; c < cols; ++c)
        if (m[r][c] != 0 && (pr == rows || abs(m[r][c]) < abs(m[pr][pc]))) {
          pr = r;
          pc = c;
        }
    if (pr == rows) break;
    std::swap(m[t], m[pr]);
    for (auto& row : m) std::swap(row[t], row[pc]);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (m[r][t] == 0) continue;
        BigInt q = m[r][t] / m[t][t];
        for (std::size_t c = t; c < cols; ++c) m[r][c] -= q * m[t][c];
        if (m[r][t] != 0) {
          std::swap(m[t], m[r]);
          clean = false;
        }
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (m[t][c] == 0) continue;
        BigInt q = m[t][c] / m[t][t];
        for (std::size_t r = t; r < rows; ++r) m[r][c] -= q * m[r][t];
        if (m[t][c] != 0) {
          for (auto& row : m) std::swap(row[t], row[c]);
          clean = false;
        }
      }
      if (!clean) continue;
      // pivot must divide the whole trailing block
      for (std::size_t r = t + 1; r < rows && clean; ++r)
        for (std::size_t c = t + 1; c < cols; ++c)
          if (m[r][c] % m[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k) m[t][k] += m[r][k];
            clean = false;
            break;
          }
    }
    ++out.rank;
    BigInt d = abs(m[t][t]);
    if (d > 1) out.nontrivial.push_back(d);
    ++t;
  }
}

/*
  Elimination on unit pivots first: a +-1 entry lets us clear its row by
  column operations and then drop its row and column, leaving the Smith
  form unchanged apart from one diagonal 1. Whatever survives goes through
  the dense algorithm.
*/
Divisors smith_divisors(std::vector<SparseColumn> cols, std::size_t row_count) {
  Divisors out;
  std::vector<std::set<std::size_t>> row_cols(row_count);
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (const auto& [r, v] : cols[c]) row_cols[r].insert(c);
  std::vector<char> col_alive(cols.size(), 1);

  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (!col_alive[c] || cols[c].empty()) continue;
      // unit entry in this column with the sparsest row
      std::size_t best_row = row_count;
      for (const auto& [r, v] : cols[c])
        if (abs(v) == 1 && (best_row == row_count || row_cols[r].size() < row_cols[best_row].size()))
          best_row = r;
      if (best_row == row_count) continue;
      const BigInt pivot = *entry(cols[c], best_row);
      std::vector<std::size_t> others(row_cols[best_row].begin(), row_cols[best_row].end());
      for (std::size_t other : others) {
        if (other == c) continue;
        BigInt factor = *entry(cols[other], best_row) * pivot;  // pivot is its own inverse
        for (const auto& [r, v] : cols[other]) row_cols[r].erase(other);
        axpy(cols[other], cols[c], factor);
        for (const auto& [r, v] : cols[other]) row_cols[r].insert(other);
      }
      for (const auto& [r, v] : cols[c]) row_cols[r].erase(c);
      cols[c].clear();
      col_alive[c] = 0;
      // the pivot row is now zero outside column c
      row_cols[best_row].clear();
      ++out.rank;
      progress = true;
    }
  }

  std::vector<std::size_t> live_cols, live_rows;
  for (std::size_t c = 0; c < cols.size(); ++c)
    if (col_alive[c] && !cols[c].empty()) live_cols.push_back(c);
  for (std::size_t r = 0; r < row_count; ++r)
    if (!row_cols[r].empty()) live_rows.push_back(r);
  if (live_cols.empty()) return out;
  std::map<std::size_t, std::size_t> row_pos;
  for (std::size_t i = 0; i < live_rows.size(); ++i) row_pos[live_rows[i]] = i;
  std::vector<std::vector<BigInt>> dense(live_rows.size(), std::vector<BigInt>(live_cols.size()));
  for (std::size_t j = 0; j < live_cols.size(); ++j)
    for (const auto& [r, v] : cols[live_cols[j]]) dense[row_pos.at(r)][j] = v;
  dense_smith(dense, out);
  return out;
}

}  // namespace

std::int64_t HomologyProfile::betti_at(int dim) const {
  const int k = dim - first_dimension;
  if (k < 0 || static_cast<std::size_t>(k) >= betti.size()) return 0;
  return betti[static_cast<std::size_t>(k)];
}

bool HomologyProfile::is_trivial() const {
  for (std::size_t k = 0; k < betti.size(); ++k)
    if (betti[k] != 0 || !torsion[k].empty()) return false;
  return true;
}

bool HomologyProfile::is_sphere(int dim) const {
  for (std::size_t k = 0; k < betti.size(); ++k) {
    const int d = static_cast<int>(k) + first_dimension;
    if (!torsion[k].empty()) return false;
    if (betti[k] != (d == dim ? 1 : 0)) return false;
  }
  return betti_at(dim) == 1;
}

std::int64_t HomologyProfile::euler_characteristic() const {
  std::int64_t chi = 0;
  for (std::size_t k = 0; k < betti.size(); ++k) {
    const int d = static_cast<int>(k) + first_dimension;
    chi += (d % 2 == 0 ? 1 : -1) * betti[k];
  }
  return chi;
}

HomologyProfile reduced_homology(const SimplicialComplex& complex) {
  HomologyProfile h;
  if (complex.is_void()) return h;
  const auto f = complex.f_vector();  // f[k] = number of faces of dim k - 1
  const std::size_t levels = f.size();

  // Faces are sorted by size, so the faces of size k form a contiguous block.
  std::vector<std::size_t> start(levels + 1, 0);
  for (std::size_t k = 0; k < levels; ++k) start[k + 1] = start[k] + f[k];

  // rank and torsion of the boundary map from size-k faces to size-(k-1) faces
  std::vector<Divisors> boundary(levels + 1);
  for (std::size_t k = 1; k < levels; ++k) {
    std::vector<SparseColumn> cols;
    cols.reserve(f[k]);
    for (std::size_t i = start[k]; i < start[k + 1]; ++i) {
      const Face& face = complex.faces()[i];
      SparseColumn col;
      for (std::size_t drop = 0; drop < face.size(); ++drop) {
        Face g;
        for (std::size_t j = 0; j < face.size(); ++j)
          if (j != drop) g.push_back(face[j]);
        auto idx = complex.face_index(g);
        if (!idx) throw Error(ErrorKind::FaceNotInComplex, "complex is not downward closed");
        col.emplace_back(*idx - start[k - 1], drop % 2 == 0 ? BigInt(1) : BigInt(-1));
      }
      std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      cols.push_back(std::move(col));
    }
    boundary[k] = smith_divisors(std::move(cols), f[k - 1]);
  }

  h.betti.assign(levels, 0);
  h.torsion.assign(levels, {});
  for (std::size_t k = 0; k < levels; ++k) {
    const std::size_t out_rank = boundary[k].rank;  // zero for k = 0
    const std::size_t in_rank = k + 1 < levels ? boundary[k + 1].rank : 0;
    h.betti[k] = static_cast<std::int64_t>(f[k] - out_rank - in_rank);
    if (k + 1 < levels)
      for (const auto& d : boundary[k + 1].nontrivial) {
        if (d > std::numeric_limits<std::int64_t>::max())
          throw Error(ErrorKind::SizeLimitExceeded, "torsion coefficient exceeds 64 bits");
        h.torsion[k].push_back(static_cast<std::int64_t>(d));
      }
    std::sort(h.torsion[k].begin(), h.torsion[k].end());
  }
  return h;
}

}  // namespace pircon
