#include "skeletal/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

namespace skeletal {

MatQ::MatQ(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}

MatQ MatQ::identity(std::size_t n) {
  MatQ m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

MatQ MatQ::from_rows(const std::vector<VecQ>& rows, std::size_t cols) {
  MatQ m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("from_rows: ragged input");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

MatQ MatQ::from_columns(const std::vector<VecQ>& cols, std::size_t rows) {
  MatQ m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw std::invalid_argument("from_columns: ragged input");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

VecQ MatQ::row(std::size_t i) const { return VecQ(a_.begin() + i * c_, a_.begin() + (i + 1) * c_); }

VecQ MatQ::column(std::size_t j) const {
  VecQ v(r_);
  for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
  return v;
}

MatQ MatQ::transpose() const {
  MatQ t(c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j)
      if (sgn((*this)(i, j))) t(j, i) = (*this)(i, j);
  return t;
}

bool MatQ::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Q& x) { return sgn(x) == 0; });
}

void MatQ::add_block(std::size_t r0, std::size_t c0, const MatQ& b, const Q& s) {
  if (r0 + b.r_ > r_ || c0 + b.c_ > c_) throw std::out_of_range("add_block");
  for (std::size_t i = 0; i < b.r_; ++i)
    for (std::size_t j = 0; j < b.c_; ++j)
      if (sgn(b(i, j))) (*this)(r0 + i, c0 + j) += s * b(i, j);
}

MatQ MatQ::columns_subset(const std::vector<std::size_t>& idx) const {
  MatQ m(r_, idx.size());
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t k = 0; k < idx.size(); ++k) m(i, k) = (*this)(i, idx[k]);
  return m;
}

bool operator==(const MatQ& a, const MatQ& b) {
  return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
}

MatQ operator*(const MatQ& a, const MatQ& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
  MatQ c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Q& x = a(i, k);
      if (sgn(x) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (sgn(b(k, j))) c(i, j) += x * b(k, j);
    }
  return c;
}

VecQ operator*(const MatQ& a, const VecQ& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("matrix-vector product: shape mismatch");
  VecQ out(a.rows());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (sgn(v[k]) == 0) continue;
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (sgn(a(i, k))) out[i] += a(i, k) * v[k];
  }
  return out;
}

MatQ operator+(const MatQ& a, const MatQ& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("sum: shape mismatch");
  MatQ c = a;
  c.add_block(0, 0, b);
  return c;
}

MatQ operator-(const MatQ& a, const MatQ& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("difference: shape mismatch");
  MatQ c = a;
  c.add_block(0, 0, b, -1);
  return c;
}

MatQ operator*(const Q& s, const MatQ& a) {
  MatQ c(a.rows(), a.cols());
  c.add_block(0, 0, a, s);
  return c;
}

MatQ hstack(const MatQ& a, const MatQ& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
  MatQ c(a.rows(), a.cols() + b.cols());
  c.add_block(0, 0, a);
  c.add_block(0, a.cols(), b);
  return c;
}

MatQ vstack(const MatQ& a, const MatQ& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column mismatch");
  MatQ c(a.rows() + b.rows(), a.cols());
  c.add_block(0, 0, a);
  c.add_block(a.rows(), 0, b);
  return c;
}

MatQ power(const MatQ& a, unsigned e) {
  MatQ p = MatQ::identity(a.rows());
  for (unsigned i = 0; i < e; ++i) p = p * a;
  return p;
}

bool is_zero(const VecQ& v) {
  return std::all_of(v.begin(), v.end(), [](const Q& x) { return sgn(x) == 0; });
}

std::string format_rational(const Q& q) { return q.get_str(); }

std::string format_matrix(const MatQ& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << '\t';
      os << format_rational(m(i, j));
    }
    os << '\n';
  }
  return os.str();
}

// ---- sparse integer rows ----

namespace {

struct ZRow {
  std::vector<std::uint32_t> idx;
  std::vector<mpz_class> val;
  bool empty() const { return idx.empty(); }
};

void make_primitive(ZRow& r) {
  if (r.empty()) return;
  mpz_class g = 0;
  for (const auto& v : r.val) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  if (g != 1)
    for (auto& v : r.val) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  if (sgn(r.val[0]) < 0)
    for (auto& v : r.val) v = -v;
}

ZRow to_zrow(const VecQ& v) {
  mpz_class l = 1;
  for (const auto& x : v)
    if (sgn(x)) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  ZRow r;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (sgn(v[j]) == 0) continue;
    r.idx.push_back(static_cast<std::uint32_t>(j));
    mpz_class t = l / v[j].get_den();
    r.val.push_back(t * v[j].get_num());
  }
  make_primitive(r);
  return r;
}

const mpz_class* lookup(const ZRow& r, std::uint32_t c) {
  auto it = std::lower_bound(r.idx.begin(), r.idx.end(), c);
  if (it == r.idx.end() || *it != c) return nullptr;
  return &r.val[it - r.idx.begin()];
}

// fa*a - fb*b
ZRow combine(const ZRow& a, const mpz_class& fa, const ZRow& b, const mpz_class& fb) {
  ZRow out;
  out.idx.reserve(a.idx.size() + b.idx.size());
  out.val.reserve(a.idx.size() + b.idx.size());
  std::size_t i = 0, j = 0;
  mpz_class t;
  while (i < a.idx.size() || j < b.idx.size()) {
    if (j == b.idx.size() || (i < a.idx.size() && a.idx[i] < b.idx[j])) {
      out.idx.push_back(a.idx[i]);
      out.val.push_back(fa * a.val[i]);
      ++i;
    } else if (i == a.idx.size() || b.idx[j] < a.idx[i]) {
      out.idx.push_back(b.idx[j]);
      out.val.push_back(-fb * b.val[j]);
      ++j;
    } else {
      t = fa * a.val[i] - fb * b.val[j];
      if (sgn(t)) {
        out.idx.push_back(a.idx[i]);
        out.val.push_back(t);
      }
      ++i;
      ++j;
    }
  }
  return out;
}

// removes the entry at pivot column of p from r
void eliminate(ZRow& r, const ZRow& p, const mpz_class& rc) {
  const mpz_class& pv = p.val[0];
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), pv.get_mpz_t(), rc.get_mpz_t());
  mpz_class fa = pv / g, fb = rc / g;
  r = combine(r, fa, p, fb);
  make_primitive(r);
}

}  // namespace

struct EchelonBuilder::Impl {
  std::vector<ZRow> rows;
  std::vector<std::uint32_t> piv;
  std::vector<int> where;

  void reduce(ZRow& r) const {
    std::vector<std::uint32_t> hits;
    for (auto c : r.idx)
      if (where[c] >= 0) hits.push_back(c);
    for (auto c : hits) {
      const mpz_class* rc = lookup(r, c);
      if (!rc) continue;
      mpz_class coef = *rc;
      eliminate(r, rows[where[c]], coef);
    }
  }
};

EchelonBuilder::EchelonBuilder(std::size_t cols) : cols_(cols), impl_(new Impl) {
  impl_->where.assign(cols, -1);
}
EchelonBuilder::~EchelonBuilder() { delete impl_; }
EchelonBuilder::EchelonBuilder(EchelonBuilder&& o) noexcept : cols_(o.cols_), impl_(o.impl_) { o.impl_ = nullptr; }
EchelonBuilder& EchelonBuilder::operator=(EchelonBuilder&& o) noexcept {
  if (this != &o) {
    delete impl_;
    cols_ = o.cols_;
    impl_ = o.impl_;
    o.impl_ = nullptr;
  }
  return *this;
}

bool EchelonBuilder::insert(const VecQ& row) {
  if (row.size() != cols_) throw std::invalid_argument("EchelonBuilder::insert: length mismatch");
  ZRow r = to_zrow(row);
  if (r.empty()) return false;
  impl_->reduce(r);
  if (r.empty()) return false;
  std::uint32_t c = r.idx[0];
  for (auto& p : impl_->rows) {
    const mpz_class* pc = lookup(p, c);
    if (!pc) continue;
    mpz_class coef = *pc;
    eliminate(p, r, coef);
  }
  impl_->where[c] = static_cast<int>(impl_->rows.size());
  impl_->piv.push_back(c);
  impl_->rows.push_back(std::move(r));
  return true;
}

bool EchelonBuilder::independent(const VecQ& row) const {
  ZRow r = to_zrow(row);
  if (r.empty()) return false;
  impl_->reduce(r);
  return !r.empty();
}

std::size_t EchelonBuilder::rank() const { return impl_->rows.size(); }

Echelon EchelonBuilder::result() const {
  std::vector<std::size_t> order(impl_->rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return impl_->piv[a] < impl_->piv[b]; });
  Echelon e;
  e.rref = MatQ(order.size(), cols_);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const ZRow& r = impl_->rows[order[k]];
    e.pivots.push_back(r.idx[0]);
    for (std::size_t t = 0; t < r.idx.size(); ++t) {
      Q& x = e.rref(k, r.idx[t]);
      x = Q(r.val[t], r.val[0]);
      x.canonicalize();
    }
  }
  return e;
}

Echelon row_echelon(const MatQ& m) {
  EchelonBuilder b(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) b.insert(m.row(i));
  return b.result();
}

std::size_t rank(const MatQ& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  // eliminate along the shorter side
  if (m.rows() > m.cols()) return rank(m.transpose());
  EchelonBuilder b(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) b.insert(m.row(i));
  return b.rank();
}

// ---- Subspace ----

Subspace::Subspace(std::size_t ambient) : ambient_(ambient), basis_(ambient, 0) {}

Subspace Subspace::span(const MatQ& columns) {
  EchelonBuilder b(columns.rows());
  for (std::size_t j = 0; j < columns.cols(); ++j) b.insert(columns.column(j));
  Echelon e = b.result();
  Subspace s;
  s.ambient_ = columns.rows();
  s.basis_ = e.rref.transpose();
  if (e.rref.rows() == 0) s.basis_ = MatQ(columns.rows(), 0);
  s.pivots_ = e.pivots;
  return s;
}

Subspace Subspace::span(const std::vector<VecQ>& vectors, std::size_t ambient) {
  EchelonBuilder b(ambient);
  for (const auto& v : vectors) b.insert(v);
  Echelon e = b.result();
  Subspace s;
  s.ambient_ = ambient;
  s.basis_ = e.rref.rows() ? e.rref.transpose() : MatQ(ambient, 0);
  s.pivots_ = e.pivots;
  return s;
}

Subspace Subspace::whole(std::size_t n) { return span(MatQ::identity(n)); }

std::optional<VecQ> Subspace::coords(const VecQ& v) const {
  if (v.size() != ambient_) throw std::invalid_argument("Subspace::coords: length mismatch");
  VecQ c(pivots_.size());
  for (std::size_t k = 0; k < pivots_.size(); ++k) c[k] = v[pivots_[k]];
  VecQ w = basis_ * c;
  if (w != v) return std::nullopt;
  return c;
}

VecQ Subspace::coords_checked(const VecQ& v) const {
  auto c = coords(v);
  if (!c) throw std::domain_error("vector is not in the subspace");
  return *c;
}

bool Subspace::contains(const VecQ& v) const { return coords(v).has_value(); }

bool Subspace::contains(const Subspace& s) const {
  for (std::size_t k = 0; k < s.dim(); ++k)
    if (!contains(s.vector(k))) return false;
  return true;
}

Subspace Subspace::operator+(const Subspace& o) const {
  if (ambient_ != o.ambient_) throw std::invalid_argument("subspace sum: ambient mismatch");
  return span(hstack(basis_, o.basis_));
}

bool operator==(const Subspace& a, const Subspace& b) {
  return a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ && a.basis_ == b.basis_;
}

namespace {

std::vector<VecQ> kernel_vectors(const MatQ& rref, const std::vector<std::size_t>& piv, std::size_t cols) {
  std::vector<bool> is_piv(cols, false);
  for (auto p : piv) is_piv[p] = true;
  std::vector<VecQ> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_piv[f]) continue;
    VecQ v(cols);
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i)
      if (sgn(rref(i, f))) v[piv[i]] = -rref(i, f);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

RankKernel rank_kernel(const MatQ& m) {
  Echelon e = row_echelon(m);
  RankKernel rk;
  rk.rank = e.pivots.size();
  rk.kernel = Subspace::span(kernel_vectors(e.rref, e.pivots, m.cols()), m.cols());
  return rk;
}

Subspace image(const MatQ& m) { return Subspace::span(m); }

// ---- LinearSolver ----

LinearSolver::LinearSolver(const MatQ& a) : rows_(a.rows()), cols_(a.cols()) {
  EchelonBuilder b(cols_ + rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    VecQ r(cols_ + rows_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = a(i, j);
    r[cols_ + i] = 1;
    b.insert(r);
  }
  Echelon e = b.result();
  rref_ = std::move(e.rref);
  pivots_ = std::move(e.pivots);
  MatQ top(0, cols_);
  std::vector<std::size_t> apiv;
  for (auto p : pivots_)
    if (p < cols_) apiv.push_back(p);
  rank_ = apiv.size();
  MatQ r(rank_, cols_);
  for (std::size_t k = 0; k < rank_; ++k)
    for (std::size_t j = 0; j < cols_; ++j) r(k, j) = rref_(k, j);
  kernel_ = Subspace::span(kernel_vectors(r, apiv, cols_), cols_);
}

std::optional<VecQ> LinearSolver::solve(const VecQ& b) const {
  if (b.size() != rows_) throw std::invalid_argument("LinearSolver::solve: length mismatch");
  VecQ x(cols_);
  Q t;
  for (std::size_t k = 0; k < pivots_.size(); ++k) {
    t = 0;
    for (std::size_t j = 0; j < rows_; ++j)
      if (sgn(b[j]) && sgn(rref_(k, cols_ + j))) t += rref_(k, cols_ + j) * b[j];
    if (pivots_[k] < cols_)
      x[pivots_[k]] = t;
    else if (sgn(t))
      return std::nullopt;
  }
  return x;
}

// ---- complexes ----

CochainComplexQ CochainComplexQ::make(std::vector<std::size_t> dims, std::vector<MatQ> d) {
  if (dims.empty() ? !d.empty() : d.size() + 1 != dims.size())
    throw std::invalid_argument("cochain complex: need one differential between consecutive terms");
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i].cols() != dims[i] || d[i].rows() != dims[i + 1])
      throw std::invalid_argument("cochain complex: differential " + std::to_string(i) + " has the wrong shape");
  for (std::size_t i = 0; i + 1 < d.size(); ++i)
    if (!(d[i + 1] * d[i]).is_zero())
      throw std::invalid_argument("cochain complex: d∘d != 0 at degree " + std::to_string(i));
  CochainComplexQ c;
  c.dims = std::move(dims);
  c.d = std::move(d);
  return c;
}

MatQ CochainComplexQ::differential(std::size_t i) const {
  if (i < d.size()) return d[i];
  return MatQ(0, i < dims.size() ? dims[i] : 0);
}

std::vector<std::size_t> betti(const CochainComplexQ& c) {
  std::vector<std::size_t> r(c.d.size());
  for (std::size_t i = 0; i < c.d.size(); ++i) r[i] = rank(c.d[i]);
  std::vector<std::size_t> b(c.dims.size());
  for (std::size_t q = 0; q < c.dims.size(); ++q) {
    std::size_t in = q > 0 ? r[q - 1] : 0;
    std::size_t out = q < r.size() ? r[q] : 0;
    b[q] = c.dims[q] - in - out;
  }
  return b;
}

Cohomology::Cohomology(const CochainComplexQ& c, std::size_t q) {
  std::size_t n = q < c.dims.size() ? c.dims[q] : 0;
  cycles_ = q < c.d.size() ? rank_kernel(c.d[q]).kernel : Subspace::whole(n);
  boundaries_ = (q >= 1 && q - 1 < c.d.size()) ? image(c.d[q - 1]) : Subspace(n);
  EchelonBuilder b(n);
  for (std::size_t k = 0; k < boundaries_.dim(); ++k) b.insert(boundaries_.vector(k));
  std::vector<VecQ> reps;
  for (std::size_t k = 0; k < cycles_.dim(); ++k) {
    VecQ z = cycles_.vector(k);
    if (b.insert(z)) reps.push_back(std::move(z));
  }
  reps_ = MatQ::from_columns(reps, n);
  nb_ = boundaries_.dim();
  solver_.emplace(hstack(boundaries_.basis(), reps_));
}

VecQ Cohomology::coords(const VecQ& z) const {
  auto x = solver_->solve(z);
  if (!x) throw std::domain_error("not a cocycle");
  return VecQ(x->begin() + nb_, x->end());
}

MatQ induced_map(const Cohomology& src, const Cohomology& dst, const MatQ& f) {
  MatQ out(dst.dim(), src.dim());
  for (std::size_t k = 0; k < src.dim(); ++k) {
    VecQ y = f * src.representatives().column(k);
    VecQ c = dst.coords(y);
    for (std::size_t i = 0; i < c.size(); ++i) out(i, k) = c[i];
  }
  return out;
}

void check_short_exact(const CochainComplexQ& sub, const CochainComplexQ& mid,
                       const CochainComplexQ& quot, const std::vector<MatQ>& inj,
                       const std::vector<MatQ>& surj) {
  std::size_t len = mid.dims.size();
  if (sub.dims.size() != len || quot.dims.size() != len || inj.size() != len || surj.size() != len)
    throw ExactnessError(0, "short exact sequence: length mismatch");
  for (std::size_t i = 0; i < len; ++i) {
    const MatQ& f = inj[i];
    const MatQ& g = surj[i];
    auto fail = [&](const std::string& why) {
      throw ExactnessError(i, "short exact sequence fails in degree " + std::to_string(i) + ": " + why);
    };
    if (f.rows() != mid.dims[i] || f.cols() != sub.dims[i] || g.rows() != quot.dims[i] || g.cols() != mid.dims[i])
      fail("shape");
    if (rank(f) != sub.dims[i]) fail("injection has a kernel");
    if (rank(g) != quot.dims[i]) fail("surjection is not onto");
    if (!(g * f).is_zero()) fail("composite is not zero");
    if (mid.dims[i] != sub.dims[i] + quot.dims[i]) fail("im(inj) != ker(surj)");
    if (i + 1 < len) {
      if (!(mid.differential(i) * f == inj[i + 1] * sub.differential(i))) fail("injection is not a chain map");
      if (!(quot.differential(i) * g == surj[i + 1] * mid.differential(i))) fail("surjection is not a chain map");
    }
  }
}

MatQ connecting_map(const CochainComplexQ& sub, const CochainComplexQ& mid,
                    const CochainComplexQ& quot, const std::vector<MatQ>& inj,
                    const std::vector<MatQ>& surj, std::size_t q, LiftStrategy strategy,
                    std::uint64_t seed) {
  check_short_exact(sub, mid, quot, inj, surj);
  std::size_t len = mid.dims.size();
  if (q >= len) throw std::out_of_range("connecting_map: degree out of range");
  Cohomology hq(quot, q);
  if (q + 1 >= len) return MatQ(0, hq.dim());
  Cohomology hs(sub, q + 1);
  LinearSolver lift(surj[q]);
  LinearSolver back(inj[q + 1]);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-7, 7);
  MatQ dm = mid.differential(q);
  MatQ out(hs.dim(), hq.dim());
  for (std::size_t k = 0; k < hq.dim(); ++k) {
    auto x = lift.solve(hq.representatives().column(k));
    if (!x) throw ExactnessError(q, "connecting_map: lift failed");
    if (strategy == LiftStrategy::randomized) {
      const Subspace& ker = lift.kernel();
      for (std::size_t t = 0; t < ker.dim(); ++t) {
        Q c = coef(rng);
        if (sgn(c) == 0) continue;
        for (std::size_t i = 0; i < x->size(); ++i) (*x)[i] += c * ker.basis()(i, t);
      }
    }
    VecQ y = dm * *x;
    auto w = back.solve(y);
    if (!w) throw ExactnessError(q + 1, "connecting_map: coboundary not in the image of the injection");
    VecQ c = hs.coords(*w);
    for (std::size_t i = 0; i < c.size(); ++i) out(i, k) = c[i];
  }
  return out;
}

// ---- weight filtration ----

std::size_t nilpotency_index(const MatQ& n) {
  if (n.rows() != n.cols()) throw std::invalid_argument("nilpotency_index: not square");
  MatQ p = MatQ::identity(n.rows());
  for (std::size_t e = 0; e <= n.rows(); ++e) {
    if (p.is_zero()) return e;
    p = p * n;
  }
  throw std::domain_error("operator is not nilpotent");
}

namespace {

void weight_rec(const MatQ& n, const Subspace& a, const Subspace& b, std::size_t lo, std::size_t hi,
                std::vector<Subspace>& w) {
  if (lo >= hi) return;
  unsigned k = static_cast<unsigned>((hi - lo) / 2);
  std::size_t amb = n.rows();
  EchelonBuilder eb(amb);
  for (std::size_t t = 0; t < a.dim(); ++t) eb.insert(a.vector(t));
  std::vector<VecQ> comp;
  for (std::size_t t = 0; t < b.dim(); ++t) {
    VecQ v = b.vector(t);
    if (eb.insert(v)) comp.push_back(std::move(v));
  }
  MatQ c = MatQ::from_columns(comp, amb);
  LinearSolver split(hstack(a.basis(), c));
  std::size_t na = a.dim(), nc = comp.size();
  MatQ nbar(nc, nc);
  for (std::size_t j = 0; j < nc; ++j) {
    auto x = split.solve(n * comp[j]);
    if (!x) throw std::domain_error("weight_filtration: operator does not preserve the filtration");
    for (std::size_t i = 0; i < nc; ++i) nbar(i, j) = (*x)[na + i];
  }
  MatQ pk = power(nbar, k);
  Subspace im = image(pk);
  Subspace ker = rank_kernel(pk).kernel;
  w[lo] = a + Subspace::span(c * im.basis());
  w[hi - 1] = a + Subspace::span(c * ker.basis());
  weight_rec(n, w[lo], w[hi - 1], lo + 1, hi - 1, w);
}

}  // namespace

std::vector<Subspace> weight_filtration(const MatQ& n) {
  std::size_t e = nilpotency_index(n);
  std::size_t m = e > 0 ? e - 1 : 0;
  std::vector<Subspace> w(2 * m + 1);
  w[2 * m] = Subspace::whole(n.rows());
  weight_rec(n, Subspace(n.rows()), w[2 * m], 0, 2 * m, w);
  return w;
}

}  // namespace skeletal
