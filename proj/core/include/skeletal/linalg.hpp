#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace skeletal {

using Q = mpq_class;
using VecQ = std::vector<Q>;

class MatQ {
 public:
  MatQ() = default;
  MatQ(std::size_t rows, std::size_t cols);

  static MatQ identity(std::size_t n);
  static MatQ from_rows(const std::vector<VecQ>& rows, std::size_t cols);
  static MatQ from_columns(const std::vector<VecQ>& cols, std::size_t rows);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }

  Q& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const Q& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  VecQ row(std::size_t i) const;
  VecQ column(std::size_t j) const;
  MatQ transpose() const;
  bool is_zero() const;

  // adds s*b into the block starting at (r0, c0)
  void add_block(std::size_t r0, std::size_t c0, const MatQ& b, const Q& s = 1);
  MatQ columns_subset(const std::vector<std::size_t>& idx) const;

  friend bool operator==(const MatQ& a, const MatQ& b);

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<Q> a_;
};

MatQ operator*(const MatQ& a, const MatQ& b);
VecQ operator*(const MatQ& a, const VecQ& v);
MatQ operator+(const MatQ& a, const MatQ& b);
MatQ operator-(const MatQ& a, const MatQ& b);
MatQ operator*(const Q& s, const MatQ& a);
MatQ hstack(const MatQ& a, const MatQ& b);
MatQ vstack(const MatQ& a, const MatQ& b);
MatQ power(const MatQ& a, unsigned e);

bool is_zero(const VecQ& v);
std::string format_rational(const Q& q);
std::string format_matrix(const MatQ& m);  // one row per line, tab separated

// reduced row echelon form of the row space of a matrix
struct Echelon {
  MatQ rref;                        // rank x cols
  std::vector<std::size_t> pivots;  // increasing
};

// incremental fraction-free Gauss-Jordan on primitive integer rows
class EchelonBuilder {
 public:
  explicit EchelonBuilder(std::size_t cols);
  ~EchelonBuilder();
  EchelonBuilder(EchelonBuilder&&) noexcept;
  EchelonBuilder& operator=(EchelonBuilder&&) noexcept;

  bool insert(const VecQ& row);  // true iff the rank went up
  bool independent(const VecQ& row) const;
  std::size_t rank() const;
  std::size_t cols() const { return cols_; }
  Echelon result() const;

 private:
  struct Impl;
  std::size_t cols_;
  Impl* impl_;
};

Echelon row_echelon(const MatQ& m);
std::size_t rank(const MatQ& m);

class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient);  // zero subspace
  static Subspace span(const MatQ& columns);
  static Subspace span(const std::vector<VecQ>& vectors, std::size_t ambient);
  static Subspace whole(std::size_t n);

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return pivots_.size(); }
  // ambient x dim; columns are the rows of the reduced echelon form
  const MatQ& basis() const { return basis_; }
  VecQ vector(std::size_t k) const { return basis_.column(k); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const VecQ& v) const;
  bool contains(const Subspace& s) const;
  std::optional<VecQ> coords(const VecQ& v) const;
  VecQ coords_checked(const VecQ& v) const;  // throws if v is outside

  Subspace operator+(const Subspace& o) const;
  friend bool operator==(const Subspace& a, const Subspace& b);

 private:
  std::size_t ambient_ = 0;
  MatQ basis_;
  std::vector<std::size_t> pivots_;
};

struct RankKernel {
  std::size_t rank = 0;
  Subspace kernel;
};
RankKernel rank_kernel(const MatQ& m);
Subspace image(const MatQ& m);

// solves A x = b; particular solution has free variables zero
class LinearSolver {
 public:
  explicit LinearSolver(const MatQ& a);
  std::optional<VecQ> solve(const VecQ& b) const;
  std::size_t rank() const { return rank_; }
  const Subspace& kernel() const { return kernel_; }

 private:
  std::size_t rows_ = 0, cols_ = 0, rank_ = 0;
  MatQ rref_;  // [R | E]
  std::vector<std::size_t> pivots_;
  Subspace kernel_;
};

struct CochainComplexQ {
  std::vector<std::size_t> dims;
  std::vector<MatQ> d;  // d[i]: term i -> term i+1

  // validates shapes and d[i+1] d[i] = 0
  static CochainComplexQ make(std::vector<std::size_t> dims, std::vector<MatQ> d);
  std::size_t length() const { return dims.size(); }
  MatQ differential(std::size_t i) const;  // zero map past the ends
};

std::vector<std::size_t> betti(const CochainComplexQ& c);

class Cohomology {
 public:
  Cohomology(const CochainComplexQ& c, std::size_t q);
  std::size_t dim() const { return reps_.cols(); }
  const MatQ& representatives() const { return reps_; }
  const Subspace& cycles() const { return cycles_; }
  const Subspace& boundaries() const { return boundaries_; }
  // class of a cocycle in the representative basis
  VecQ coords(const VecQ& cocycle) const;

 private:
  Subspace cycles_, boundaries_;
  MatQ reps_;
  std::optional<LinearSolver> solver_;
  std::size_t nb_ = 0;
};

// matrix of a chain map on cohomology: H^q(src) -> H^{q+s}(dst), where f maps term q of src
MatQ induced_map(const Cohomology& src, const Cohomology& dst, const MatQ& f);

class ExactnessError : public std::runtime_error {
 public:
  ExactnessError(std::size_t degree, const std::string& what)
      : std::runtime_error(what), degree_(degree) {}
  std::size_t degree() const { return degree_; }

 private:
  std::size_t degree_;
};

enum class LiftStrategy { pivot, randomized };

// H^q(quot) -> H^{q+1}(sub) for 0 -> sub -> mid -> quot -> 0
MatQ connecting_map(const CochainComplexQ& sub, const CochainComplexQ& mid,
                    const CochainComplexQ& quot, const std::vector<MatQ>& inj,
                    const std::vector<MatQ>& surj, std::size_t q,
                    LiftStrategy strategy = LiftStrategy::pivot, std::uint64_t seed = 1);

void check_short_exact(const CochainComplexQ& sub, const CochainComplexQ& mid,
                       const CochainComplexQ& quot, const std::vector<MatQ>& inj,
                       const std::vector<MatQ>& surj);

std::size_t nilpotency_index(const MatQ& n);  // smallest e with n^e = 0; throws if none
std::vector<Subspace> weight_filtration(const MatQ& n);

}  // namespace skeletal
