#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skeletal/complex.hpp"
#include "skeletal/linalg.hpp"
#include "skeletal/strata.hpp"

namespace skeletal {

using Monomial = std::vector<Vertex>;  // sorted exterior monomial
using Multivector = std::map<Monomial, Q>;

// i ^ m as (sign, monomial); nullopt when i is already in m
std::optional<std::pair<int, Monomial>> wedge_vertex(Vertex i, const Monomial& m);
// contraction with the dual of i; nullopt when i is not in m
std::optional<std::pair<int, Monomial>> contract(Vertex i, const Monomial& m);
Multivector derivation(Vertex i, Vertex k, const Multivector& x);  // d_i - d_k
Multivector keep_within(const Multivector& x, const Face& f);
void add_term(Multivector& x, const Monomial& m, const Q& c);
// k-element subsets in lex order
std::vector<Monomial> subsets_of_size(const std::vector<Vertex>& v, int k);

// lambda^m(tau): exterior algebra on the vertices of tau modulo the sum of all vertices.
// Basis: monomials avoiding the smallest vertex.
class LambdaForms {
 public:
  explicit LambdaForms(Face tau);
  const Face& face() const { return tau_; }
  std::size_t dim(int m) const;
  const std::vector<Monomial>& basis(int m) const;
  VecQ reduce(const Multivector& x, int m) const;
  Multivector lift(const VecQ& v, int m) const;

 private:
  Face tau_;
  std::vector<std::vector<Monomial>> basis_;
  std::vector<std::map<Monomial, std::size_t>> pos_;
};

// Λ̄, A and Λ as functors on the face poset. Holds a reference to the model.
class LambdaSheaf {
 public:
  explicit LambdaSheaf(const StrataModel& model, unsigned threads = 0);

  const StrataModel& model() const { return m_; }
  const Complex& complex() const { return m_.complex(); }
  int n() const { return m_.n(); }
  int max_degree() const { return n() + 1; }

  // Ā^p(s): p-subsets F of the star vertices with F ∪ s a face
  const std::vector<Monomial>& abar_monomials(int s, int p) const;
  std::size_t abar_dim(int s, int p) const { return abar_monomials(s, p).size(); }
  Subspace abar_space(int s, int p) const { return Subspace::whole(abar_dim(s, p)); }
  std::optional<std::size_t> abar_index(int s, int p, const Monomial& m) const;
  MatQ one_wedge(int s, int p) const;  // Ā^{p-1}(s) -> Ā^p(s)
  const Echelon& ideal(int s, int p) const;

  // Λ̄^p = Ā^p / I^p with the non-pivot monomials as basis
  const std::vector<std::size_t>& lbar_basis(int s, int p) const;
  std::size_t lbar_dim(int s, int p) const { return lbar_basis(s, p).size(); }
  VecQ lbar_reduce(int s, int p, const VecQ& abar) const;
  VecQ lbar_lift(int s, int p, const VecQ& lbar) const;

  MatQ zeta(int s, int p) const;  // Ā^p -> Ā^1 ⊗ Λ̄^{p-1}
  VecQ c1(int t, Vertex i) const;
  MatQ c1_map(int s) const;  // Ā^1(s) -> 'H^2(s)
  MatQ condition_matrix(int s, int p) const;

  const Subspace& a_space(int s, int p) const;       // inside Ā^p(s)
  Subspace a_space_literal(int s, int p) const;      // Ker (c1 ⊗ id) ∘ ζ
  const Subspace& lambda_space(int s, int p) const;  // inside Λ̄^p(s)

  // support projections for s ⊆ t
  MatQ abar_restriction(int s, int t, int p) const;
  MatQ lbar_restriction(int s, int t, int p) const;
  MatQ restriction(int s, int t, int p) const;    // Λ^p bases
  MatQ a_restriction(int s, int t, int p) const;  // A^p bases

  MatQ wedge_map(int s, int p) const;     // Λ^{p-1}(s) -> A^p(s)
  MatQ quotient_map(int s, int p) const;  // A^p(s) -> Λ^p(s)
  // dim A^p = dim Λ^{p-1} + dim Λ^p with the explicit maps; throws ExactnessError naming the face
  void check_exactness(int s, int p) const;
  // I maps into I and A into A under every covering restriction; false with a message otherwise
  bool check_restrictions(int p, std::string* why = nullptr) const;

  CochainComplexQ cech_complex(int p) const;
  CochainComplexQ cech_complex_a(int p) const;
  std::vector<MatQ> cech_wedge(int p) const;     // Č(Λ^{p-1}) -> Č(A^p)
  std::vector<MatQ> cech_quotient(int p) const;  // Č(A^p) -> Č(Λ^p)
  // H^q(Λ^p) -> H^{q+1}(Λ^{p-1})
  MatQ monodromy_snake(int p, int q, LiftStrategy strategy = LiftStrategy::pivot, std::uint64_t seed = 1) const;
  std::vector<std::vector<std::size_t>> betti_table() const;  // [p][q], p = 0..n

 private:
  struct FaceData {
    std::vector<std::vector<Monomial>> mons;
    std::vector<std::map<Monomial, std::size_t>> pos;
    std::vector<Echelon> ideal;
    std::vector<std::vector<std::size_t>> lbar;
    std::vector<Subspace> a, lam;
  };
  void build_face(int s);
  const FaceData& fd(int s, int p) const;

  const StrataModel& m_;
  std::vector<FaceData> faces_;
};

// cochain complex ⊕_{|s|=q+1} F(s) with the signed sum of restrictions
CochainComplexQ assemble_cech(const Complex& c, const std::function<std::size_t(int)>& dim,
                              const std::function<MatQ(int, int)>& res);
// block diagonal map between two such complexes
std::vector<MatQ> assemble_facewise(const Complex& c, const std::function<std::size_t(int)>& src_dim,
                                    const std::function<std::size_t(int)>& dst_dim,
                                    const std::function<MatQ(int)>& map);

}  // namespace skeletal
