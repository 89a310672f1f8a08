#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "skeletal/kres.hpp"
#include "skeletal/linalg.hpp"
#include "skeletal/sheaf.hpp"
#include "skeletal/strata.hpp"

namespace skeletal {

struct SteenbrinkRow {
  struct Component {
    int r, face;
    std::size_t off, dim;
  };
  int p = 0;
  CochainComplexQ cx;
  std::vector<std::vector<Component>> terms;  // terms[q]
  const Component* find(std::size_t q, int r, int face) const;
};

// 'M_p(Y_σ, Y_σ°): terms q = 0..p are ⊕ 'H^{2q}(Y_τ), τ ⊇ σ with |τ| = |σ| + p - q, differential -γ
// over the vertices of τ outside σ. base = -1 takes all faces of size p - q >= 1 (the X term is absent
// from the ' model).
CochainComplexQ m_complex(const StrataModel& m, int p, int base);

// terms ⊕_{r ≤ min(p,q)} 'H^{2r}(faces of size p+q-2r+1), d = ρ - γ with γ weighted by N_i
SteenbrinkRow row_complex(const StrataModel& m, int p);
// componentwise identity row(p)_q -> row(p-1)_{q+1}
std::vector<MatQ> n_on_rows(const SteenbrinkRow& src, const SteenbrinkRow& dst);

// pads with zeros before comparing
bool same_betti(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b);

struct TheoremAReport {
  bool ok = true;
  std::vector<std::vector<std::size_t>> lambda, rows;  // [p][q], q = 0..n
  std::vector<std::pair<int, int>> mismatches;         // (p, q)
};
TheoremAReport theorem_a_check(const LambdaSheaf& sheaf);

// ranks of H^q(Λ^p) -> H^{q+1}(Λ^{p-1}) from the three pipelines
struct NRanks {
  int p = 0;
  std::vector<std::size_t> snake, kcomplex, rows;  // indexed by q = 0..n
  bool agree() const;
};
NRanks compare_n_ranks(const LambdaSheaf& sheaf, const KResolution& kr, int p);
std::vector<std::size_t> row_n_ranks(const StrataModel& m, int p);
std::vector<std::size_t> kcomplex_n_ranks(const KResolution& kr, int p);
std::vector<std::size_t> snake_n_ranks(const LambdaSheaf& sheaf, int p);
// N: H^q(p) -> H^{q+1}(p-1) in the cohomology bases of each model
MatQ kcomplex_n_matrix(const KResolution& kr, int p, int q);
MatQ row_n_matrix(const StrataModel& m, int p, int q);

using Omega = std::map<Vertex, VecQ>;  // ω_i in 'H^2(Y_i) coordinates

struct LefschetzReport {
  bool ok = true;
  bool positivity_checked = false;  // surfaces only
  std::map<Vertex, Q> squares;      // ω_i², surfaces only
  std::vector<std::string> failures;
  std::size_t rank_checks = 0;
};
// throws std::invalid_argument when the ω_i disagree on a double stratum
LefschetzReport lefschetz_check(const StrataModel& m, const Omega& omega);
// ω restricted to a face (from its smallest vertex)
VecQ omega_at(const StrataModel& m, const Omega& omega, int face);

// ω_i = Σ of the edge classes at i; requires every d-value to be 1
Omega build_omega_minus_one(const AffineSurfaceDatum& s, const StrataModel& m);

struct TheoremAPrimeReport {
  bool ran = false;
  std::string skipped;  // reason when not run
  bool ok = true;
  std::vector<std::string> failures;
  std::vector<std::vector<std::size_t>> table;  // [p][q]
};
TheoremAPrimeReport theorem_a_prime_check(const LambdaSheaf& sheaf, const LefschetzReport& lefschetz);

// N on H^k = ⊕_{p} H^{k-p}(Λ^p), blocks in increasing p, built from snake maps
MatQ n_on_total(const LambdaSheaf& sheaf, int k);
// dim gr^W_w H^k for w = 0..2k from the monodromy filtration of N centred at k
std::map<int, std::size_t> limit_weight_graded(const LambdaSheaf& sheaf, int k);
// the same dimensions read from the table: weight 2p <-> H^{k-p}(Λ^p)
std::map<int, std::size_t> table_weight_graded(const LambdaSheaf& sheaf, int k);

}  // namespace skeletal
