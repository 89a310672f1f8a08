#ifndef SKELETAL_COMPLEX_HPP
#define SKELETAL_COMPLEX_HPP

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace skeletal {

using Vertex = long;
using Face = std::vector<Vertex>;  // strictly increasing

int sgn(Vertex i, const Face& j);
Face boundary_face(Vertex i, const Face& s);
Face face_union(const Face& a, const Face& b);
Face face_with(const Face& a, Vertex v);
bool face_contains(const Face& big, const Face& small);
bool face_has(const Face& f, Vertex v);
std::string face_str(const Face& f);  // "0,1,2"

struct Violation {
  std::string kind;
  Face face;
  std::string detail;
};

struct SimplicialReport {
  bool ok = true;
  std::vector<Violation> violations;
};

// checks a raw face list: sortedness, subset closure, dimension bound
SimplicialReport validate_simplicial(const std::vector<Face>& faces, int declared_dim);

class Complex {
 public:
  Complex() = default;
  // closure of the given faces
  static Complex from_maximal(const std::vector<Face>& maximal);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  int dimension() const { return dim_; }
  std::size_t size() const { return faces_.size(); }
  const std::vector<Face>& faces() const { return faces_; }
  const Face& face(int id) const { return faces_[id]; }
  int id(const Face& f) const;  // -1 if absent
  bool is_face(const Face& f) const { return id(f) >= 0; }
  const std::vector<int>& of_size(std::size_t k) const;
  const std::vector<Face>& maximal_faces() const { return maximal_; }

  // all faces containing the face, itself included, in id order
  const std::vector<int>& cofaces(int id) const { return cofaces_[id]; }
  const std::vector<int>& covering(int id) const { return covering_[id]; }  // cofaces one size up
  // vertex set of the closed star
  const std::vector<Vertex>& star_vertices(int id) const { return star0_[id]; }
  int codim(int id) const { return dim_ - static_cast<int>(faces_[id].size()) + 1; }

  Complex closed_star(const Face& s) const;
  std::vector<Face> open_star_faces(const Face& s) const;
  std::vector<Face> link_vertices_cycle(Vertex o) const;  // edges of the link of o
  std::vector<int> euler_counts() const;                   // faces per dimension

 private:
  std::vector<Vertex> vertices_;
  std::vector<Face> faces_;
  std::vector<Face> maximal_;
  std::map<Face, int> index_;
  std::vector<std::vector<int>> by_size_;
  std::vector<std::vector<int>> cofaces_, covering_;
  std::vector<std::vector<Vertex>> star0_;
  int dim_ = -1;
};

}  // namespace skeletal

#endif
