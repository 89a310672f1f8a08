#ifndef SKELETAL_KRES_HPP
#define SKELETAL_KRES_HPP

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "skeletal/linalg.hpp"
#include "skeletal/sheaf.hpp"

namespace skeletal {

// ⊕_{τ ⊇ σ} 'H^{2r}(τ) ⊗ λ^m(τ), blocks in coface order, entry (x, y) at off + x*l + y
struct Ambient {
  struct Block {
    int face;
    std::size_t off, h, l;
  };
  std::vector<Block> blocks;
  std::map<int, std::size_t> index;  // face id -> position in blocks
  std::size_t dim = 0;
  const Block* find(int t) const;
};

struct TotalComplex {
  struct Piece {
    int q, r, face;
    std::size_t off, dim;
  };
  CochainComplexQ cx;
  std::vector<std::vector<Piece>> pieces;  // by total degree q + r
  const Piece* find(std::size_t t, int q, int r, int face) const;
};

class KResolution {
 public:
  explicit KResolution(const LambdaSheaf& sheaf, unsigned threads = 0);

  const LambdaSheaf& sheaf() const { return l_; }
  const StrataModel& model() const { return l_.model(); }
  const Complex& complex() const { return l_.complex(); }
  int n() const { return l_.n(); }

  const LambdaForms& forms(int t) const { return forms_.at(t); }
  Ambient ambient(int s, int r, int m) const;
  // K^r(σ, Λ^p) inside ambient(σ, r, p - r)
  const Subspace& k_space(int s, int r, int p) const;
  // K^0(σ, Λ^p) as the image of Λ̄^p(σ): columns are the product families
  MatQ k0_embedding(int s, int p) const;

  // ambient(s, r, m) -> ambient(s, r+1, m-1) with base vertex k. With only_sigma the ξ-sum runs
  // over i ∈ σ instead of i ∈ τ (kept to show that variant leaves K).
  MatQ d_prime_ambient(int s, int r, int m, Vertex k, bool only_sigma = false) const;
  // K^r(σ,Λ^p) -> K^{r+1}(σ,Λ^p); throws std::domain_error if the image leaves K
  MatQ d_prime(int s, int r, int p, Vertex k) const;
  // signed projection ambient(s) -> ambient(a) for a = s ∪ j
  MatQ d_second_ambient(int s, int a, int r, int m) const;
  MatQ d_second(int s, int a, int r, int p) const;

  CochainComplexQ resolution_complex(int s, int p) const;  // (K^•(σ,Λ^p), d')
  TotalComplex total_complex(int p) const;                 // d = d' + (-1)^r d''
  std::vector<std::size_t> total_betti(int p) const { return betti(total_complex(p).cx); }

  // N: total(p)_t -> total(p-1)_{t+1}, one matrix per degree t of total(p)
  std::vector<MatQ> n_map(int p) const;
  std::vector<MatQ> n_map(int p, const TotalComplex& src, const TotalComplex& dst) const;

  // Ker d' on K^0(σ,Λ^p), pulled back to Λ̄^p(σ)
  Subspace h0_kernel(int s, int p) const;
  // (res ⊗ id)(v_τ) = (id ⊗ |τ)(v_τ') on covering pairs of cofaces; false with a message otherwise
  bool check_compatibility(int s, int r, int p, std::string* why = nullptr) const;

 private:
  const LambdaSheaf& l_;
  std::map<int, LambdaForms> forms_;
  std::map<std::tuple<int, int, int>, Subspace> k_;
  Subspace build_k(int s, int r, int p) const;
};

// ⊕_{σ ⊂ τ, |σ| = |τ| - (n - i)} λ^i(σ) with differential sgn(l, τ) l ∧ (·)
CochainComplexQ residue_complex(const Face& tau, int n);

// adds s * (a ⊗ b) into m at (r0, c0); row index x*b.rows()+y, column h*b.cols()+l
void add_kron(MatQ& m, std::size_t r0, std::size_t c0, const MatQ& a, const MatQ& b, const Q& s = 1);

}  // namespace skeletal

#endif
