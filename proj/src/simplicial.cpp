#include "pircon/simplicial.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "pircon/error.hpp"

namespace pircon {

namespace {

bool face_less(const Face& a, const Face& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// Builds a complex from a face family that is already downward closed,
// dropping vertices that occur in no face.
SimplicialComplex from_closed_family(const std::vector<std::string>& names, const std::set<Face>& faces) {
  std::vector<int> used(names.size(), 0);
  for (const auto& f : faces)
    for (int v : f) used[static_cast<std::size_t>(v)] = 1;
  std::vector<int> remap(names.size(), -1);
  std::vector<std::string> kept;
  for (std::size_t v = 0; v < names.size(); ++v)
    if (used[v]) {
      remap[v] = static_cast<int>(kept.size());
      kept.push_back(names[v]);
    }
  std::vector<Face> facets;
  facets.reserve(faces.size());
  for (const auto& f : faces) {
    Face g;
    g.reserve(f.size());
    for (int v : f) g.push_back(remap[static_cast<std::size_t>(v)]);
    facets.push_back(std::move(g));
  }
  // Every listed face is passed along; closure() keeps them and adds nothing
  // new when the family is closed.
  return SimplicialComplex::closure(std::move(kept), facets);
}

void add_subsets(const Face& f, std::set<Face>& out) {
  const std::size_t k = f.size();
  if (k >= 8 * sizeof(unsigned long)) throw Error(ErrorKind::SizeLimitExceeded, "face too large");
  for (unsigned long mask = 0; mask < (1UL << k); ++mask) {
    Face g;
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1UL) g.push_back(f[i]);
    out.insert(std::move(g));
  }
}

}  // namespace

SimplicialComplex SimplicialComplex::closure(std::vector<std::string> vertex_names,
                                             const std::vector<Face>& facets) {
  std::set<Face> all;
  for (Face f : facets) {
    std::sort(f.begin(), f.end());
    if (std::adjacent_find(f.begin(), f.end()) != f.end())
      throw Error(ErrorKind::FaceNotInComplex, "face lists a vertex twice");
    for (int v : f)
      if (v < 0 || static_cast<std::size_t>(v) >= vertex_names.size())
        throw Error(ErrorKind::UnknownId, "face vertex out of range");
    if (all.contains(f)) continue;
    add_subsets(f, all);
  }
  SimplicialComplex c;
  std::vector<int> used(vertex_names.size(), 0);
  for (const auto& f : all)
    for (int v : f) used[static_cast<std::size_t>(v)] = 1;
  if (std::find(used.begin(), used.end(), 0) != used.end()) {
    // drop unused vertices and retry on the compacted family
    std::vector<Face> faces(all.begin(), all.end());
    std::vector<int> remap(vertex_names.size(), -1);
    std::vector<std::string> kept;
    for (std::size_t v = 0; v < vertex_names.size(); ++v)
      if (used[v]) {
        remap[v] = static_cast<int>(kept.size());
        kept.push_back(vertex_names[v]);
      }
    for (auto& f : faces)
      for (int& v : f) v = remap[static_cast<std::size_t>(v)];
    c.names_ = std::move(kept);
    c.faces_ = std::move(faces);
  } else {
    c.names_ = std::move(vertex_names);
    c.faces_.assign(all.begin(), all.end());
  }
  c.index_faces();
  assert(c.is_downward_closed());
  return c;
}

SimplicialComplex SimplicialComplex::empty_face_only() { return closure({}, {Face{}}); }

void SimplicialComplex::index_faces() {
  std::sort(faces_.begin(), faces_.end(), face_less);
  lookup_.clear();
  for (std::size_t i = 0; i < faces_.size(); ++i) lookup_.emplace(faces_[i], i);
  boundary_.assign(faces_.size(), {});
  coboundary_.assign(faces_.size(), {});
  for (std::size_t i = 0; i < faces_.size(); ++i) {
    const Face& f = faces_[i];
    for (std::size_t k = 0; k < f.size(); ++k) {
      Face g;
      g.reserve(f.size() - 1);
      for (std::size_t j = 0; j < f.size(); ++j)
        if (j != k) g.push_back(f[j]);
      auto it = lookup_.find(g);
      if (it == lookup_.end()) continue;  // only possible when not closed
      boundary_[i].push_back(it->second);
      coboundary_[it->second].push_back(i);
    }
  }
}

int SimplicialComplex::dimension() const {
  if (faces_.empty()) return -2;
  return static_cast<int>(faces_.back().size()) - 1;
}

std::optional<std::size_t> SimplicialComplex::face_index(const Face& f) const {
  auto it = lookup_.find(f);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::vector<Face> SimplicialComplex::facets() const {
  std::vector<Face> out;
  for (std::size_t i = 0; i < faces_.size(); ++i)
    if (coboundary_[i].empty()) out.push_back(faces_[i]);
  return out;
}

std::vector<std::size_t> SimplicialComplex::f_vector() const {
  std::vector<std::size_t> f;
  for (const auto& face : faces_) {
    if (f.size() <= face.size()) f.resize(face.size() + 1, 0);
    ++f[face.size()];
  }
  return f;
}

bool SimplicialComplex::is_downward_closed() const {
  for (std::size_t i = 0; i < faces_.size(); ++i)
    if (boundary_[i].size() != faces_[i].size()) return false;
  for (const auto& f : faces_)
    for (int v : f)
      if (v < 0 || static_cast<std::size_t>(v) >= names_.size()) return false;
  return true;
}

std::vector<std::string> SimplicialComplex::named(const Face& f) const {
  std::vector<std::string> out;
  out.reserve(f.size());
  for (int v : f) out.push_back(names_[static_cast<std::size_t>(v)]);
  return out;
}

SimplicialComplex order_complex(const FinitePoset& p) {
  std::set<Face> chains;
  chains.insert(Face{});
  // Extend chains upwards only, along the linear extension.
  auto order = linear_extension(p);
  std::vector<Elem> stack;
  std::function<void(std::size_t)> grow = [&](std::size_t from) {
    for (std::size_t k = from; k < order.size(); ++k) {
      Elem e = order[k];
      if (!stack.empty() && !p.lt(stack.back(), e)) continue;
      stack.push_back(e);
      Face f(stack.begin(), stack.end());
      std::sort(f.begin(), f.end());
      chains.insert(std::move(f));
      grow(k + 1);
      stack.pop_back();
    }
  };
  grow(0);
  return from_closed_family(p.ids(), chains);
}

SimplicialComplex link(const SimplicialComplex& complex, const Face& sigma) {
  Face s = sigma;
  std::sort(s.begin(), s.end());
  if (!complex.contains(s)) throw Error(ErrorKind::FaceNotInComplex, "link of a face outside the complex");
  std::set<Face> out;
  for (const auto& tau : complex.faces()) {
    Face both;
    std::set_union(s.begin(), s.end(), tau.begin(), tau.end(), std::back_inserter(both));
    if (both.size() != s.size() + tau.size()) continue;
    if (complex.contains(both)) out.insert(tau);
  }
  return from_closed_family(complex.vertex_names(), out);
}

SimplicialComplex deletion(const SimplicialComplex& complex, std::span<const int> vertices) {
  std::set<int> drop(vertices.begin(), vertices.end());
  std::set<Face> out;
  for (const auto& f : complex.faces())
    if (std::none_of(f.begin(), f.end(), [&](int v) { return drop.contains(v); })) out.insert(f);
  return from_closed_family(complex.vertex_names(), out);
}

SimplicialComplex join_complex(const SimplicialComplex& a, const SimplicialComplex& b) {
  std::vector<std::string> names = a.vertex_names();
  std::set<std::string> taken(names.begin(), names.end());
  const int offset = static_cast<int>(names.size());
  for (auto name : b.vertex_names()) {
    while (taken.contains(name)) name += "'";
    taken.insert(name);
    names.push_back(name);
  }
  std::set<Face> out;
  for (const auto& s : a.faces())
    for (const auto& t : b.faces()) {
      Face f = s;
      for (int v : t) f.push_back(v + offset);
      out.insert(std::move(f));
    }
  return from_closed_family(names, out);
}

SimplicialComplex closure(std::vector<std::string> vertex_names, const std::vector<Face>& family) {
  return SimplicialComplex::closure(std::move(vertex_names), family);
}

PseudomanifoldReport is_pseudomanifold_with_boundary(const SimplicialComplex& complex) {
  PseudomanifoldReport r;
  r.dimension = complex.dimension();
  if (complex.is_void()) return r;
  const auto d = static_cast<std::size_t>(r.dimension + 1);  // facet size
  r.pure = true;
  for (std::size_t i = 0; i < complex.face_count(); ++i)
    if (complex.coboundary_of(i).empty() && complex.faces()[i].size() != d) r.pure = false;
  if (!r.pure) return r;
  r.pseudomanifold = true;
  for (std::size_t i = 0; i < complex.face_count(); ++i) {
    if (complex.faces()[i].size() + 1 != d) continue;
    const auto incidences = complex.coboundary_of(i).size();
    if (incidences > 2) r.pseudomanifold = false;
    if (incidences == 1) r.boundary_facets.push_back(complex.faces()[i]);
  }
  return r;
}

SimplicialComplex boundary_complex(const SimplicialComplex& complex) {
  auto r = is_pseudomanifold_with_boundary(complex);
  if (r.boundary_facets.empty()) return SimplicialComplex{};
  return SimplicialComplex::closure(complex.vertex_names(), r.boundary_facets);
}

std::string_view to_string(Shape shape) {
  switch (shape) {
    case Shape::BallLike: return "BallLike";
    case Shape::SphereLike: return "SphereLike";
    case Shape::Neither: return "Neither";
  }
  return "Neither";
}

Shape classify_ball_or_sphere(const SimplicialComplex& complex, int expected_dim) {
  if (complex.is_void() || complex.dimension() != expected_dim) return Shape::Neither;
  auto report = is_pseudomanifold_with_boundary(complex);
  if (!report.pseudomanifold) return Shape::Neither;
  auto homology = reduced_homology(complex);
  if (report.boundary_facets.empty() && homology.is_sphere(expected_dim)) return Shape::SphereLike;
  if (!report.boundary_facets.empty() && homology.is_trivial()) return Shape::BallLike;
  return Shape::Neither;
}

Shape classify_ball_or_sphere(const SimplicialComplex& complex) {
  return classify_ball_or_sphere(complex, complex.dimension());
}

}  // namespace pircon
