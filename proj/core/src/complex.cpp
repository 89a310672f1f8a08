#include "skeletal/complex.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace skeletal {

int sgn(Vertex i, const Face& j) {
  auto it = std::lower_bound(j.begin(), j.end(), i);
  if (it == j.end() || *it != i) throw std::invalid_argument("sgn: vertex " + std::to_string(i) + " not in face");
  return ((it - j.begin()) % 2) ? -1 : 1;
}

Face boundary_face(Vertex i, const Face& s) {
  if (s.size() < 2) throw std::invalid_argument("boundary_face: a vertex has no boundary face");
  if (!face_has(s, i)) throw std::invalid_argument("boundary_face: vertex not in face");
  Face out;
  for (auto v : s)
    if (v != i) out.push_back(v);
  return out;
}

Face face_union(const Face& a, const Face& b) {
  Face out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Face face_with(const Face& a, Vertex v) {
  Face out = a;
  auto it = std::lower_bound(out.begin(), out.end(), v);
  if (it == out.end() || *it != v) out.insert(it, v);
  return out;
}

bool face_contains(const Face& big, const Face& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

bool face_has(const Face& f, Vertex v) { return std::binary_search(f.begin(), f.end(), v); }

std::string face_str(const Face& f) {
  std::ostringstream os;
  for (std::size_t k = 0; k < f.size(); ++k) os << (k ? "," : "") << f[k];
  return os.str();
}

SimplicialReport validate_simplicial(const std::vector<Face>& faces, int declared_dim) {
  SimplicialReport rep;
  auto add = [&](const std::string& kind, const Face& f, const std::string& detail) {
    rep.ok = false;
    rep.violations.push_back({kind, f, detail});
  };
  std::set<Face> all;
  for (const auto& f : faces) {
    if (f.empty()) {
      add("empty face", f, "faces must be nonempty");
      continue;
    }
    if (!std::is_sorted(f.begin(), f.end()) || std::adjacent_find(f.begin(), f.end()) != f.end())
      add("not sorted", f, "vertex list must be strictly increasing");
    if (declared_dim >= 0 && static_cast<int>(f.size()) > declared_dim + 1)
      add("dimension bound", f, "face has " + std::to_string(f.size()) + " vertices");
    Face s = f;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    all.insert(s);
  }
  for (const auto& f : all) {
    if (f.size() < 2) continue;
    for (auto v : f) {
      Face b;
      for (auto x : f)
        if (x != v) b.push_back(x);
      if (!all.count(b)) {
        add("not closed under subsets", f, "missing face " + face_str(b));
        break;
      }
    }
  }
  return rep;
}

Complex Complex::from_maximal(const std::vector<Face>& maximal) {
  std::set<Face> all;
  for (Face m : maximal) {
    if (m.empty()) throw std::invalid_argument("empty face");
    std::sort(m.begin(), m.end());
    if (std::adjacent_find(m.begin(), m.end()) != m.end())
      throw std::invalid_argument("repeated vertex in face " + face_str(m));
    std::size_t k = m.size();
    if (k > 20) throw std::invalid_argument("face too large");
    for (unsigned long mask = 1; mask < (1ul << k); ++mask) {
      Face s;
      for (std::size_t b = 0; b < k; ++b)
        if (mask & (1ul << b)) s.push_back(m[b]);
      all.insert(std::move(s));
    }
  }
  Complex c;
  c.faces_.assign(all.begin(), all.end());
  std::stable_sort(c.faces_.begin(), c.faces_.end(), [](const Face& a, const Face& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::size_t top = 0;
  for (std::size_t i = 0; i < c.faces_.size(); ++i) {
    const Face& f = c.faces_[i];
    c.index_[f] = static_cast<int>(i);
    top = std::max(top, f.size());
    if (f.size() == 1) c.vertices_.push_back(f[0]);
  }
  c.dim_ = static_cast<int>(top) - 1;
  c.by_size_.assign(top + 2, {});
  for (std::size_t i = 0; i < c.faces_.size(); ++i) c.by_size_[c.faces_[i].size()].push_back(static_cast<int>(i));

  std::size_t n = c.faces_.size();
  c.cofaces_.assign(n, {});
  c.covering_.assign(n, {});
  c.star0_.assign(n, {});
  // every face is a coface of each of its subfaces
  for (std::size_t i = 0; i < n; ++i) {
    const Face& f = c.faces_[i];
    std::size_t k = f.size();
    for (unsigned long mask = 1; mask < (1ul << k); ++mask) {
      Face s;
      for (std::size_t b = 0; b < k; ++b)
        if (mask & (1ul << b)) s.push_back(f[b]);
      int sid = c.index_.at(s);
      c.cofaces_[sid].push_back(static_cast<int>(i));
      if (s.size() + 1 == k) c.covering_[sid].push_back(static_cast<int>(i));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(c.cofaces_[i].begin(), c.cofaces_[i].end());
    std::sort(c.covering_[i].begin(), c.covering_[i].end());
    std::set<Vertex> st;
    for (int t : c.cofaces_[i]) st.insert(c.faces_[t].begin(), c.faces_[t].end());
    c.star0_[i].assign(st.begin(), st.end());
    if (c.covering_[i].empty()) c.maximal_.push_back(c.faces_[i]);
  }
  return c;
}

int Complex::id(const Face& f) const {
  auto it = index_.find(f);
  return it == index_.end() ? -1 : it->second;
}

const std::vector<int>& Complex::of_size(std::size_t k) const {
  static const std::vector<int> none;
  return k < by_size_.size() ? by_size_[k] : none;
}

Complex Complex::closed_star(const Face& s) const {
  int sid = id(s);
  if (sid < 0) throw std::invalid_argument("closed_star: not a face");
  std::vector<Face> top;
  for (int t : cofaces_[sid])
    if (covering_[t].empty()) top.push_back(faces_[t]);
  return from_maximal(top);
}

std::vector<Face> Complex::open_star_faces(const Face& s) const {
  int sid = id(s);
  if (sid < 0) throw std::invalid_argument("open_star_faces: not a face");
  std::vector<Face> out;
  for (int t : cofaces_[sid]) out.push_back(faces_[t]);
  return out;
}

std::vector<Face> Complex::link_vertices_cycle(Vertex o) const {
  int oid = id(Face{o});
  if (oid < 0) throw std::invalid_argument("not a vertex");
  std::vector<Face> out;
  for (int t : cofaces_[oid])
    if (faces_[t].size() == 3) out.push_back(boundary_face(o, faces_[t]));
  return out;
}

std::vector<int> Complex::euler_counts() const {
  std::vector<int> out;
  for (std::size_t k = 1; k < by_size_.size(); ++k)
    if (!by_size_[k].empty()) out.push_back(static_cast<int>(by_size_[k].size()));
  return out;
}

}  // namespace skeletal
