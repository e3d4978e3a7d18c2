#include <algorithm>
#include <deque>

#include "pircon/error.hpp"
#include "pircon/simplicial.hpp"

namespace pircon {

std::size_t MorseMatching::critical_count() const {
  return static_cast<std::size_t>(std::count(partner.begin(), partner.end(), std::nullopt));
}

bool is_valid_matching(const SimplicialComplex& complex, const MorseMatching& matching) {
  if (matching.partner.size() != complex.face_count()) return false;
  for (std::size_t i = 0; i < matching.partner.size(); ++i) {
    const auto& m = matching.partner[i];
    if (!m) continue;
    if (*m >= complex.face_count() || matching.partner[*m] != i) return false;
    const auto& lo = complex.faces()[std::min(i, *m)];
    const auto& hi = complex.faces()[std::max(i, *m)];
    if (hi.size() != lo.size() + 1 || !std::includes(hi.begin(), hi.end(), lo.begin(), lo.end()))
      return false;
  }
  return true;
}

bool verify_acyclic(const SimplicialComplex& complex, const MorseMatching& matching) {
  // Hasse diagram of the face poset pointing downwards, with matched edges
  // reversed. Acyclic iff Kahn's algorithm consumes every node.
  const std::size_t n = complex.face_count();
  std::vector<std::vector<std::size_t>> out(n);
  std::vector<std::size_t> indeg(n, 0);
  for (std::size_t hi = 0; hi < n; ++hi)
    for (std::size_t lo : complex.boundary_of(hi)) {
      const bool matched = matching.partner[lo] == hi;
      const std::size_t from = matched ? lo : hi;
      const std::size_t to = matched ? hi : lo;
      out[from].push_back(to);
      ++indeg[to];
    }
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (indeg[i] == 0) ready.push_back(i);
  std::size_t seen = 0;
  while (!ready.empty()) {
    std::size_t v = ready.back();
    ready.pop_back();
    ++seen;
    for (std::size_t w : out[v])
      if (--indeg[w] == 0) ready.push_back(w);
  }
  return seen == n;
}

std::vector<ElementaryCollapse> collapse_to_void(const SimplicialComplex& complex,
                                                 const MorseMatching& matching) {
  if (!is_valid_matching(complex, matching))
    throw Error(ErrorKind::NotCollapsibleWithThisMatching, "not a matching on this complex");
  if (!matching.complete())
    throw Error(ErrorKind::NotCollapsibleWithThisMatching,
                std::to_string(matching.critical_count()) + " critical faces");
  if (!verify_acyclic(complex, matching))
    throw Error(ErrorKind::NotCollapsibleWithThisMatching, "matching has an alternating cycle");

  const std::size_t n = complex.face_count();
  std::vector<char> alive(n, 1);
  std::vector<std::size_t> cofaces(n);
  for (std::size_t i = 0; i < n; ++i) cofaces[i] = complex.coboundary_of(i).size();

  auto lower_of = [&](std::size_t i) {
    std::size_t j = *matching.partner[i];
    return complex.faces()[i].size() < complex.faces()[j].size() ? i : j;
  };

  std::deque<std::size_t> work;
  for (std::size_t i = 0; i < n; ++i)
    if (lower_of(i) == i) work.push_back(i);

  std::vector<ElementaryCollapse> steps;
  steps.reserve(n / 2);
  while (!work.empty()) {
    const std::size_t lo = work.front();
    work.pop_front();
    const std::size_t hi = *matching.partner[lo];
    if (!alive[lo] || cofaces[hi] != 0 || cofaces[lo] != 1) continue;
    alive[lo] = alive[hi] = 0;
    steps.push_back({lo, hi});
    for (std::size_t b : complex.boundary_of(hi)) {
      --cofaces[b];
      if (alive[b]) work.push_back(lower_of(b));
    }
    for (std::size_t b : complex.boundary_of(lo)) {
      --cofaces[b];
      if (alive[b]) work.push_back(lower_of(b));
    }
  }
  if (steps.size() * 2 != n)
    throw Error(ErrorKind::NotCollapsibleWithThisMatching, "no free pair left before reaching the void complex");
  return steps;
}

MuMatching morse_matching_mu(const FinitePoset& p) {
  auto lo = p.bottom();
  auto hi = p.top();
  if (!lo || !hi) throw Error(ErrorKind::NoMaximum, "the matching needs a poset with 0^ and 1^");
  const FinitePoset prod = product_with_chain2(p);
  std::vector<Elem> members;
  for (Elem e = 0; e < prod.size(); ++e)
    if (e != chain2_index(*lo, false) && e != chain2_index(*lo, true) && e != chain2_index(*hi, true))
      members.push_back(e);
  std::vector<Elem> local_of(prod.size(), static_cast<Elem>(-1));
  for (Elem i = 0; i < members.size(); ++i) local_of[members[i]] = i;

  MuMatching out;
  out.q = prod.induced(members);
  out.complex = order_complex(out.q);
  const auto& faces = out.complex.faces();
  // vertex index of the complex -> element of Q (vertices may be dropped if
  // isolated, but every element of Q lies in a chain, so this is the identity)
  std::vector<Elem> vertex_elem(out.complex.vertex_count());
  for (std::size_t v = 0; v < vertex_elem.size(); ++v)
    vertex_elem[v] = out.q.index(out.complex.vertex_names()[v]);
  std::vector<int> elem_vertex(out.q.size(), -1);
  for (std::size_t v = 0; v < vertex_elem.size(); ++v) elem_vertex[vertex_elem[v]] = static_cast<int>(v);

  out.matching.partner.assign(faces.size(), std::nullopt);
  for (std::size_t i = 0; i < faces.size(); ++i) {
    std::vector<Elem> chain;
    for (int v : faces[i]) chain.push_back(vertex_elem[static_cast<std::size_t>(v)]);
    std::sort(chain.begin(), chain.end(), [&](Elem a, Elem b) { return out.q.lt(a, b); });
    Elem base = *hi;  // sentinel (1^, beta)
    for (Elem e : chain) {
      const Elem in_prod = members[e];
      if (in_prod % 2 == 1) {
        base = in_prod / 2;
        break;
      }
    }
    const Elem pc = local_of[chain2_index(base, false)];
    const int pv = elem_vertex[pc];
    Face partner = faces[i];
    auto it = std::lower_bound(partner.begin(), partner.end(), pv);
    if (it != partner.end() && *it == pv)
      partner.erase(it);
    else
      partner.insert(it, pv);
    auto idx = out.complex.face_index(partner);
    if (!idx) throw Error(ErrorKind::FaceNotInComplex, "p(C) does not extend the chain");
    out.matching.partner[i] = *idx;
  }
  return out;
}

}  // namespace pircon
