#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "skeletal/complex.hpp"
#include "skeletal/linalg.hpp"

namespace skeletal {

enum class RelationMode { explicit_relations, pairing };

struct DegenerationDatum {
  Complex complex;
  std::map<Vertex, long> multiplicity;
  RelationMode mode = RelationMode::pairing;
  // (face, r) -> vectors over generators(face, r)
  std::map<std::pair<Face, int>, std::vector<VecQ>> relations;
  // (face, i) with i in face -> vector over generators(face, 1)
  std::map<std::pair<Face, Vertex>, VecQ> self_classes;
};

// g^alpha_tau for alpha ⊇ tau, |alpha| = |tau| + r, in face-id order
std::vector<Face> generators(const Complex& c, const Face& tau, int r);

struct FormalClass {
  Face face;
  int degree = 0;
  VecQ coeffs;  // over generators(face, degree), normal form modulo relations
};

using GenVec = std::map<int, Q>;  // face id -> coefficient

struct CheckFailure {
  std::string check;
  Face face;
  std::string detail;
};

struct DatumReport {
  bool ok = true;
  std::map<std::string, std::size_t> checked;  // check name -> number of instances
  std::vector<CheckFailure> failures;
  void fail(const std::string& check, const Face& f, const std::string& detail) {
    ok = false;
    failures.push_back({check, f, detail});
  }
};

class StrataModel {
 public:
  struct Space {
    int face = -1;
    int degree = 0;
    std::vector<int> gens;
    std::map<int, std::size_t> pos;
    MatQ relations;  // reduced echelon rows over gens
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> basis;  // indices into gens
  };

  explicit StrataModel(DegenerationDatum d);

  const DegenerationDatum& datum() const { return d_; }
  const Complex& complex() const { return d_.complex; }
  int n() const { return d_.complex.dimension(); }
  long N(Vertex v) const { return d_.multiplicity.at(v); }

  const Space& space(int t, int r) const;
  std::size_t dim(int t, int r) const;
  std::size_t dim(const Face& t, int r) const { return dim(complex().id(t), r); }

  // free generator calculus (before reduction)
  GenVec res_gen(int alpha, int t, Vertex j) const;
  GenVec res(const GenVec& y, int t, Vertex j) const;
  GenVec res_to(const GenVec& y, int t, int target) const;
  GenVec res_to_ordered(const GenVec& y, int t, const std::vector<Vertex>& order) const;
  GenVec cup(const GenVec& x, const GenVec& y, int t) const;
  GenVec xi_gen(int t, Vertex i) const;
  static Q degree(const GenVec& y);

  VecQ reduce(const GenVec& y, int t, int r) const;
  GenVec lift(const VecQ& coords, int t, int r) const;
  GenVec basis_gen(int t, int r, std::size_t h) const;

  // matrices in quotient coordinates
  const MatQ& res_matrix(int t, int u, int r) const;  // t ⊂ u covering
  MatQ res_to_matrix(int t, int u, int r) const;      // any coface
  const MatQ& gys_matrix(int t, int s, int r) const;  // s ⊂ t covering, (t,r) -> (s,r+1)
  const MatQ& xi_cup_matrix(int t, Vertex i, int r) const;  // ξ_{i|t} ∪ : (t,r) -> (t,r+1)
  VecQ xi(int t, Vertex i) const;
  MatQ cup_matrix(int t, const VecQ& x, int rx, int ry) const;  // left multiplication by x

  // FormalClass interface
  FormalClass normal_form(const Face& f, int r, const GenVec& y) const;
  FormalClass unit(const Face& f) const;
  FormalClass generator(const Face& tau, const Face& alpha) const;
  FormalClass from_coords(const Face& f, int r, const VecQ& c) const;
  VecQ coords(const FormalClass& a) const;
  GenVec to_gen(const FormalClass& a) const;
  FormalClass res(const FormalClass& a, const Face& tau) const;
  FormalClass gys(const FormalClass& a, const Face& sigma) const;
  FormalClass cup(const FormalClass& a, const FormalClass& b) const;
  Q degree(const FormalClass& a) const;  // top-degree evaluation
  bool is_zero(const FormalClass& a) const;

  // level k = faces with k vertices
  std::vector<std::size_t> level_offsets(int k, int r) const;  // size = #faces + 1
  std::size_t level_dim(int k, int r) const;
  MatQ gamma_matrix(int k, int r, bool weighted = false) const;
  MatQ rho_matrix(int k, int r) const;

 private:
  void build_spaces();
  void build_matrices();

  DegenerationDatum d_;
  mutable std::map<std::tuple<int, int, Vertex>, GenVec> res_memo_;
  std::unique_ptr<std::mutex> memo_mu_ = std::make_unique<std::mutex>();
  std::map<std::pair<int, int>, Space> spaces_;
  std::map<std::tuple<int, int, int>, MatQ> res_mats_, gys_mats_;
  std::map<std::tuple<int, Vertex, int>, MatQ> xi_mats_;
};

DatumReport validate_datum(const StrataModel& m);

// ---- surface data ----

struct AffineSurfaceDatum {
  Complex complex;
  std::map<Vertex, long> multiplicity;
  std::map<std::pair<Vertex, Vertex>, long> d;  // (o, j): flag at o on edge {o,j}
  long get_d(Vertex o, Vertex j) const { return d.at({o, j}); }
};

struct EdgeApexes {
  Vertex i, k;  // i < k
};
EdgeApexes edge_apexes(const Complex& c, Vertex o, Vertex j);
// neighbours of o in link order, starting from the smallest neighbour
std::vector<Vertex> link_cycle(const Complex& c, Vertex o);

DatumReport validate_surface(const AffineSurfaceDatum& s);

class DatumError : public std::runtime_error {
 public:
  DatumError(const std::string& what, Face where = {}) : std::runtime_error(what), where_(std::move(where)) {}
  const Face& where() const { return where_; }

 private:
  Face where_;
};

DegenerationDatum build_kulikov_surface(const AffineSurfaceDatum& s, RelationMode mode = RelationMode::pairing,
                                        const std::map<std::pair<Face, int>, std::vector<VecQ>>& extra = {});
DegenerationDatum build_curve(const Complex& graph, const std::map<Vertex, long>& multiplicity);
AffineSurfaceDatum mumford_torus_surface(int k);
DegenerationDatum build_mumford_torus(int k);

// shipped fixtures
AffineSurfaceDatum tetrahedron_surface();
AffineSurfaceDatum icosahedron_surface();
Complex cycle_graph(int m);
Complex path_graph(int m);
std::map<Vertex, long> unit_multiplicities(const Complex& c);

}  // namespace skeletal
