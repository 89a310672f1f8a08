#ifndef SKELETAL_AFFINE_HPP
#define SKELETAL_AFFINE_HPP

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "skeletal/linalg.hpp"
#include "skeletal/sheaf.hpp"
#include "skeletal/strata.hpp"

namespace skeletal {

using Vec2 = std::array<Q, 2>;

// Two triangles {o,j,i} and {o,j,k} glued along {o,j}, seen from o = min.
// Anchors: N_j g_j = (1,0), N_i g_i = (0, 1/N_o), N_k g_k = d_oj N_j g_j - N_i g_i.
struct AffineChart {
  Vertex o, j, i, k;
  long d;
  Vec2 g_i, g_j, g_k;
  Q volume_i, volume_k;  // lattice volumes of the two triangles
  Q n_sigma, n_eta;      // products of multiplicities over each triangle
};

std::vector<AffineChart> charts(const AffineSurfaceDatum& s);
// N_i g_i + N_k g_k = d N_j g_j and volumes 1/N
bool chart_ok(const AffineSurfaceDatum& s, const AffineChart& c);

// product of [[0,-1],[1,d]] around the link cycle of o
MatQ vertex_monodromy(const AffineSurfaceDatum& s, Vertex o);
std::vector<Vertex> singular_vertices(const AffineSurfaceDatum& s);

// vertex-value functions on the closed star of a face satisfying the edge equations of every
// interior edge; indexed by the star vertices in increasing order; contains the constants
Subspace affine_sections(const AffineSurfaceDatum& s, const Face& sigma);

struct Lambda1Comparison {
  bool ok = true;
  std::size_t faces_checked = 0;
  std::vector<std::pair<Face, std::string>> failures;
};
// sheaf must come from build_kulikov_surface(s)
Lambda1Comparison compare_lambda1(const LambdaSheaf& sheaf, const AffineSurfaceDatum& s);

// subdivide an edge or cone a triangle; the new vertex is one more than the largest id
AffineSurfaceDatum blowup(const AffineSurfaceDatum& s, const Face& center);

}  // namespace skeletal

#endif
