#include "skeletal/sheaf.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "skeletal/parallel.hpp"

namespace skeletal {

std::optional<std::pair<int, Monomial>> wedge_vertex(Vertex i, const Monomial& m) {
  auto it = std::lower_bound(m.begin(), m.end(), i);
  if (it != m.end() && *it == i) return std::nullopt;
  int pos = static_cast<int>(it - m.begin());
  Monomial out = m;
  out.insert(out.begin() + pos, i);
  return std::make_pair(pos % 2 ? -1 : 1, std::move(out));
}

std::optional<std::pair<int, Monomial>> contract(Vertex i, const Monomial& m) {
  auto it = std::lower_bound(m.begin(), m.end(), i);
  if (it == m.end() || *it != i) return std::nullopt;
  int pos = static_cast<int>(it - m.begin());
  Monomial out = m;
  out.erase(out.begin() + pos);
  return std::make_pair(pos % 2 ? -1 : 1, std::move(out));
}

void add_term(Multivector& x, const Monomial& m, const Q& c) {
  if (sgn(c) == 0) return;
  Q& y = x[m];
  y += c;
  if (sgn(y) == 0) x.erase(m);
}

Multivector derivation(Vertex i, Vertex k, const Multivector& x) {
  Multivector out;
  for (const auto& [mon, c] : x) {
    if (auto w = contract(i, mon)) add_term(out, w->second, c * w->first);
    if (auto w = contract(k, mon)) add_term(out, w->second, -c * w->first);
  }
  return out;
}

Multivector keep_within(const Multivector& x, const Face& f) {
  Multivector out;
  for (const auto& [mon, c] : x)
    if (face_contains(f, mon)) out.emplace(mon, c);
  return out;
}

namespace {

void combos(const std::vector<Vertex>& v, std::size_t k, std::size_t start, Monomial& cur,
            std::vector<Monomial>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i + (k - cur.size()) <= v.size(); ++i) {
    cur.push_back(v[i]);
    combos(v, k, i + 1, cur, out);
    cur.pop_back();
  }
}

VecQ coords_or_throw(const Subspace& sp, const VecQ& v, const std::string& what) {
  auto c = sp.coords(v);
  if (!c) throw std::domain_error(what);
  return *c;
}

}  // namespace

std::vector<Monomial> subsets_of_size(const std::vector<Vertex>& v, int k) {
  std::vector<Monomial> out;
  if (k < 0 || static_cast<std::size_t>(k) > v.size()) return out;
  Monomial cur;
  combos(v, static_cast<std::size_t>(k), 0, cur, out);
  return out;
}

// ---- LambdaForms ----

LambdaForms::LambdaForms(Face tau) : tau_(std::move(tau)) {
  if (tau_.empty()) throw std::invalid_argument("LambdaForms: empty face");
  std::vector<Vertex> rest(tau_.begin() + 1, tau_.end());
  for (int m = 0; m < static_cast<int>(tau_.size()); ++m) {
    basis_.push_back(subsets_of_size(rest, m));
    std::map<Monomial, std::size_t> p;
    for (std::size_t k = 0; k < basis_.back().size(); ++k) p[basis_.back()[k]] = k;
    pos_.push_back(std::move(p));
  }
}

const std::vector<Monomial>& LambdaForms::basis(int m) const {
  static const std::vector<Monomial> none;
  return m >= 0 && m < static_cast<int>(basis_.size()) ? basis_[m] : none;
}

std::size_t LambdaForms::dim(int m) const { return basis(m).size(); }

VecQ LambdaForms::reduce(const Multivector& x, int m) const {
  VecQ out(dim(m));
  if (out.empty()) return out;
  Vertex k0 = tau_[0];
  auto put = [&](const Monomial& mon, const Q& c) {
    auto it = pos_[m].find(mon);
    if (it == pos_[m].end()) throw std::invalid_argument("LambdaForms::reduce: monomial outside the face");
    out[it->second] += c;
  };
  for (const auto& [mon, c] : x) {
    if (static_cast<int>(mon.size()) != m) throw std::invalid_argument("LambdaForms::reduce: wrong degree");
    if (mon.empty() || mon[0] != k0) {
      put(mon, c);
      continue;
    }
    // k0 = -(sum of the other vertices)
    Monomial rest(mon.begin() + 1, mon.end());
    for (std::size_t a = 1; a < tau_.size(); ++a)
      if (auto w = wedge_vertex(tau_[a], rest)) put(w->second, -c * w->first);
  }
  return out;
}

Multivector LambdaForms::lift(const VecQ& v, int m) const {
  Multivector out;
  const auto& b = basis(m);
  for (std::size_t k = 0; k < v.size() && k < b.size(); ++k) add_term(out, b[k], v[k]);
  return out;
}

// ---- LambdaSheaf ----

LambdaSheaf::LambdaSheaf(const StrataModel& model, unsigned threads) : m_(model) {
  faces_.resize(complex().size());
  parallel_for(complex().size(), [this](std::size_t s) { build_face(static_cast<int>(s)); }, threads);
}

const LambdaSheaf::FaceData& LambdaSheaf::fd(int s, int p) const {
  if (s < 0 || s >= static_cast<int>(faces_.size())) throw std::out_of_range("LambdaSheaf: bad face id");
  if (p < 0 || p > max_degree()) throw std::out_of_range("LambdaSheaf: degree out of range");
  return faces_[s];
}

void LambdaSheaf::build_face(int s) {
  const Complex& c = complex();
  FaceData& f = faces_[s];
  int top = max_degree();
  for (int p = 0; p <= top; ++p) {
    std::set<Monomial> ms;
    for (int t : c.cofaces(s))
      for (auto& m : subsets_of_size(c.face(t), p)) ms.insert(std::move(m));
    f.mons.emplace_back(ms.begin(), ms.end());
    std::map<Monomial, std::size_t> pos;
    for (std::size_t k = 0; k < f.mons.back().size(); ++k) pos[f.mons.back()[k]] = k;
    f.pos.push_back(std::move(pos));
  }
  for (int p = 0; p <= top; ++p) {
    std::size_t na = f.mons[p].size();
    Echelon e = p == 0 ? Echelon{MatQ(0, na), {}} : row_echelon(one_wedge(s, p).transpose());
    std::vector<std::size_t> basis;
    std::size_t k = 0;
    for (std::size_t j = 0; j < na; ++j) {
      if (k < e.pivots.size() && e.pivots[k] == j) {
        ++k;
        continue;
      }
      basis.push_back(j);
    }
    f.ideal.push_back(std::move(e));
    f.lbar.push_back(std::move(basis));
  }
  for (int p = 0; p <= top; ++p) {
    if (p == 0) {
      f.a.push_back(Subspace::whole(1));
    } else {
      MatQ cm = condition_matrix(s, p);
      f.a.push_back(cm.rows() ? rank_kernel(cm).kernel : Subspace::whole(cm.cols()));
    }
    std::vector<VecQ> vs;
    for (std::size_t k = 0; k < f.a.back().dim(); ++k) vs.push_back(lbar_reduce(s, p, f.a.back().vector(k)));
    f.lam.push_back(Subspace::span(vs, f.lbar[p].size()));
  }
}

const std::vector<Monomial>& LambdaSheaf::abar_monomials(int s, int p) const { return fd(s, p).mons[p]; }

std::optional<std::size_t> LambdaSheaf::abar_index(int s, int p, const Monomial& m) const {
  const auto& pos = fd(s, p).pos[p];
  auto it = pos.find(m);
  if (it == pos.end()) return std::nullopt;
  return it->second;
}

MatQ LambdaSheaf::one_wedge(int s, int p) const {
  if (p < 1) throw std::invalid_argument("one_wedge: p >= 1");
  const auto& src = abar_monomials(s, p - 1);
  MatQ out(abar_dim(s, p), src.size());
  for (std::size_t k = 0; k < src.size(); ++k)
    for (auto i : complex().star_vertices(s))
      if (auto w = wedge_vertex(i, src[k]))
        if (auto idx = abar_index(s, p, w->second)) out(*idx, k) += w->first;
  return out;
}

const Echelon& LambdaSheaf::ideal(int s, int p) const { return fd(s, p).ideal[p]; }
const std::vector<std::size_t>& LambdaSheaf::lbar_basis(int s, int p) const { return fd(s, p).lbar[p]; }

VecQ LambdaSheaf::lbar_reduce(int s, int p, const VecQ& abar) const {
  const Echelon& e = ideal(s, p);
  VecQ v = abar;
  if (v.size() != abar_dim(s, p)) throw std::invalid_argument("lbar_reduce: wrong length");
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    Q f = v[e.pivots[r]];
    if (sgn(f) == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (sgn(e.rref(r, j)) != 0) v[j] -= f * e.rref(r, j);
  }
  const auto& b = lbar_basis(s, p);
  VecQ out(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) out[k] = v[b[k]];
  return out;
}

VecQ LambdaSheaf::lbar_lift(int s, int p, const VecQ& lbar) const {
  const auto& b = lbar_basis(s, p);
  VecQ out(abar_dim(s, p));
  for (std::size_t k = 0; k < b.size() && k < lbar.size(); ++k) out[b[k]] = lbar[k];
  return out;
}

MatQ LambdaSheaf::zeta(int s, int p) const {
  if (p < 1) throw std::invalid_argument("zeta: p >= 1");
  const auto& mons = abar_monomials(s, p);
  std::size_t na1 = abar_dim(s, 1), nl = lbar_dim(s, p - 1), nm = abar_dim(s, p - 1);
  MatQ out(na1 * nl, mons.size());
  for (std::size_t k = 0; k < mons.size(); ++k) {
    const Monomial& m = mons[k];
    for (std::size_t l = 0; l < m.size(); ++l) {
      Monomial rest = m;
      rest.erase(rest.begin() + l);
      VecQ e(nm);
      e[*abar_index(s, p - 1, rest)] = 1;
      VecQ red = lbar_reduce(s, p - 1, e);
      std::size_t ia = *abar_index(s, 1, Monomial{m[l]});
      for (std::size_t j = 0; j < nl; ++j)
        if (sgn(red[j]) != 0) out(ia * nl + j, k) += (l % 2 ? -1 : 1) * red[j];
    }
  }
  return out;
}

VecQ LambdaSheaf::c1(int t, Vertex i) const {
  const Complex& c = complex();
  if (face_has(c.face(t), i)) {
    VecQ x = m_.xi(t, i);
    for (auto& v : x) v *= m_.N(i);
    return x;
  }
  int u = c.id(face_with(c.face(t), i));
  if (u < 0) throw std::invalid_argument("c1: vertex not in the star");
  VecQ x = m_.reduce(GenVec{{u, Q(1)}}, t, 1);
  for (auto& v : x) v *= m_.N(i);
  return x;
}

MatQ LambdaSheaf::c1_map(int s) const {
  const auto& mons = abar_monomials(s, 1);
  std::vector<VecQ> cols;
  for (const auto& m : mons) cols.push_back(c1(s, m[0]));
  return MatQ::from_columns(cols, m_.dim(s, 1));
}

MatQ LambdaSheaf::condition_matrix(int s, int p) const {
  const Complex& c = complex();
  const auto& mons = abar_monomials(s, p);
  struct Block {
    int e;
    std::size_t off, h;
    std::map<Monomial, std::size_t> fb;
  };
  std::vector<Block> blocks;
  std::size_t rows = 0;
  for (int e : c.cofaces(s)) {
    std::size_t h = m_.dim(e, 1);
    if (!h) continue;
    Block b{e, rows, h, {}};
    auto fb = subsets_of_size(c.face(e), p - 1);
    for (std::size_t k = 0; k < fb.size(); ++k) b.fb[fb[k]] = k;
    rows += h * fb.size();
    blocks.push_back(std::move(b));
  }
  MatQ out(rows, mons.size());
  for (const auto& b : blocks) {
    const Face& ef = c.face(b.e);
    std::size_t w = b.fb.size();
    for (auto i : c.star_vertices(b.e)) {
      VecQ ci;
      for (std::size_t k = 0; k < mons.size(); ++k) {
        auto ct = contract(i, mons[k]);
        if (!ct || !face_contains(ef, ct->second)) continue;
        if (ci.empty()) ci = c1(b.e, i);
        std::size_t j = b.fb.at(ct->second);
        for (std::size_t hh = 0; hh < b.h; ++hh)
          if (sgn(ci[hh]) != 0) out(b.off + hh * w + j, k) += ci[hh] * ct->first;
      }
    }
  }
  return out;
}

const Subspace& LambdaSheaf::a_space(int s, int p) const { return fd(s, p).a[p]; }
const Subspace& LambdaSheaf::lambda_space(int s, int p) const { return fd(s, p).lam[p]; }

Subspace LambdaSheaf::a_space_literal(int s, int p) const {
  if (p == 0) return Subspace::whole(1);
  MatQ cm = c1_map(s);
  if (p == 1) return cm.rows() ? rank_kernel(cm).kernel : Subspace::whole(cm.cols());
  MatQ z = zeta(s, p);
  std::size_t h = cm.rows(), na1 = abar_dim(s, 1), nl = lbar_dim(s, p - 1);
  MatQ comp(h * nl, z.cols());
  for (std::size_t k = 0; k < z.cols(); ++k)
    for (std::size_t ia = 0; ia < na1; ++ia)
      for (std::size_t j = 0; j < nl; ++j) {
        const Q& zc = z(ia * nl + j, k);
        if (sgn(zc) == 0) continue;
        for (std::size_t hh = 0; hh < h; ++hh) comp(hh * nl + j, k) += zc * cm(hh, ia);
      }
  return comp.rows() ? rank_kernel(comp).kernel : Subspace::whole(comp.cols());
}

MatQ LambdaSheaf::abar_restriction(int s, int t, int p) const {
  if (!face_contains(complex().face(t), complex().face(s))) throw std::invalid_argument("restriction: not a coface");
  const auto& src = abar_monomials(s, p);
  MatQ out(abar_dim(t, p), src.size());
  for (std::size_t k = 0; k < src.size(); ++k)
    if (auto idx = abar_index(t, p, src[k])) out(*idx, k) = 1;
  return out;
}

MatQ LambdaSheaf::lbar_restriction(int s, int t, int p) const {
  MatQ ar = abar_restriction(s, t, p);
  const auto& b = lbar_basis(s, p);
  std::vector<VecQ> cols;
  for (auto bi : b) cols.push_back(lbar_reduce(t, p, ar.column(bi)));
  return MatQ::from_columns(cols, lbar_dim(t, p));
}

MatQ LambdaSheaf::restriction(int s, int t, int p) const {
  MatQ lr = lbar_restriction(s, t, p);
  const Subspace& src = lambda_space(s, p);
  const Subspace& dst = lambda_space(t, p);
  std::vector<VecQ> cols;
  for (std::size_t k = 0; k < src.dim(); ++k)
    cols.push_back(coords_or_throw(dst, lr * src.vector(k),
                                   "restriction leaves Λ^" + std::to_string(p) + " from face " +
                                       face_str(complex().face(s)) + " to " + face_str(complex().face(t))));
  return MatQ::from_columns(cols, dst.dim());
}

MatQ LambdaSheaf::a_restriction(int s, int t, int p) const {
  MatQ ar = abar_restriction(s, t, p);
  const Subspace& src = a_space(s, p);
  const Subspace& dst = a_space(t, p);
  std::vector<VecQ> cols;
  for (std::size_t k = 0; k < src.dim(); ++k)
    cols.push_back(coords_or_throw(dst, ar * src.vector(k),
                                   "restriction leaves A^" + std::to_string(p) + " from face " +
                                       face_str(complex().face(s)) + " to " + face_str(complex().face(t))));
  return MatQ::from_columns(cols, dst.dim());
}

MatQ LambdaSheaf::wedge_map(int s, int p) const {
  if (p < 1) throw std::invalid_argument("wedge_map: p >= 1");
  MatQ ow = one_wedge(s, p);
  const Subspace& src = lambda_space(s, p - 1);
  const Subspace& dst = a_space(s, p);
  std::vector<VecQ> cols;
  for (std::size_t k = 0; k < src.dim(); ++k) {
    VecQ v = ow * lbar_lift(s, p - 1, src.vector(k));
    auto c = dst.coords(v);
    if (!c)
      throw ExactnessError(static_cast<std::size_t>(p),
                           "1 ∧ Λ^" + std::to_string(p - 1) + " is not inside A^" + std::to_string(p) + " at face " +
                               face_str(complex().face(s)));
    cols.push_back(*c);
  }
  return MatQ::from_columns(cols, dst.dim());
}

MatQ LambdaSheaf::quotient_map(int s, int p) const {
  const Subspace& src = a_space(s, p);
  const Subspace& dst = lambda_space(s, p);
  std::vector<VecQ> cols;
  for (std::size_t k = 0; k < src.dim(); ++k) cols.push_back(dst.coords_checked(lbar_reduce(s, p, src.vector(k))));
  return MatQ::from_columns(cols, dst.dim());
}

void LambdaSheaf::check_exactness(int s, int p) const {
  std::string where = " at face " + face_str(complex().face(s)) + ", p = " + std::to_string(p);
  auto fail = [&](const std::string& msg) { throw ExactnessError(static_cast<std::size_t>(p), msg + where); };
  MatQ w = wedge_map(s, p), q = quotient_map(s, p);
  std::size_t l0 = lambda_space(s, p - 1).dim(), l1 = lambda_space(s, p).dim(), a = a_space(s, p).dim();
  if (rank(w) != l0) fail("wedge with 1 is not injective");
  if (rank(q) != l1) fail("quotient is not surjective");
  if (!(q * w).is_zero()) fail("quotient after wedge is nonzero");
  if (a != l0 + l1) fail("dim A^p != dim Λ^{p-1} + dim Λ^p");
}

bool LambdaSheaf::check_restrictions(int p, std::string* why) const {
  const Complex& c = complex();
  for (std::size_t s = 0; s < c.size(); ++s)
    for (int t : c.covering(static_cast<int>(s))) {
      int si = static_cast<int>(s);
      MatQ ar = abar_restriction(si, t, p);
      const Echelon& e = ideal(si, p);
      for (std::size_t r = 0; r < e.rref.rows(); ++r)
        if (!is_zero(lbar_reduce(t, p, ar * e.rref.row(r)))) {
          if (why) *why = "ideal not preserved from " + face_str(c.face(si)) + " to " + face_str(c.face(t));
          return false;
        }
      const Subspace& a = a_space(si, p);
      for (std::size_t k = 0; k < a.dim(); ++k)
        if (!a_space(t, p).contains(ar * a.vector(k))) {
          if (why) *why = "A not preserved from " + face_str(c.face(si)) + " to " + face_str(c.face(t));
          return false;
        }
    }
  return true;
}

CochainComplexQ assemble_cech(const Complex& c, const std::function<std::size_t(int)>& dim,
                              const std::function<MatQ(int, int)>& res) {
  int n = c.dimension();
  std::vector<std::size_t> dims;
  std::vector<std::map<int, std::size_t>> offs;
  for (int q = 0; q <= n; ++q) {
    std::map<int, std::size_t> o;
    std::size_t tot = 0;
    for (int s : c.of_size(q + 1)) {
      o[s] = tot;
      tot += dim(s);
    }
    offs.push_back(std::move(o));
    dims.push_back(tot);
  }
  std::vector<MatQ> d;
  for (int q = 0; q < n; ++q) {
    MatQ m(dims[q + 1], dims[q]);
    for (int s : c.of_size(q + 1)) {
      if (!dim(s)) continue;
      for (int u : c.covering(s)) {
        if (!dim(u)) continue;
        Vertex j = 0;
        for (auto v : c.face(u))
          if (!face_has(c.face(s), v)) j = v;
        m.add_block(offs[q + 1].at(u), offs[q].at(s), res(s, u), Q(sgn(j, c.face(u))));
      }
    }
    d.push_back(std::move(m));
  }
  return CochainComplexQ::make(std::move(dims), std::move(d));
}

std::vector<MatQ> assemble_facewise(const Complex& c, const std::function<std::size_t(int)>& src_dim,
                                    const std::function<std::size_t(int)>& dst_dim,
                                    const std::function<MatQ(int)>& map) {
  std::vector<MatQ> out;
  for (int q = 0; q <= c.dimension(); ++q) {
    std::size_t r = 0, k = 0;
    for (int s : c.of_size(q + 1)) {
      r += dst_dim(s);
      k += src_dim(s);
    }
    MatQ m(r, k);
    r = k = 0;
    for (int s : c.of_size(q + 1)) {
      if (dst_dim(s) && src_dim(s)) m.add_block(r, k, map(s));
      r += dst_dim(s);
      k += src_dim(s);
    }
    out.push_back(std::move(m));
  }
  return out;
}

CochainComplexQ LambdaSheaf::cech_complex(int p) const {
  return assemble_cech(
      complex(), [&](int s) { return lambda_space(s, p).dim(); }, [&](int s, int u) { return restriction(s, u, p); });
}

CochainComplexQ LambdaSheaf::cech_complex_a(int p) const {
  return assemble_cech(
      complex(), [&](int s) { return a_space(s, p).dim(); }, [&](int s, int u) { return a_restriction(s, u, p); });
}

std::vector<MatQ> LambdaSheaf::cech_wedge(int p) const {
  return assemble_facewise(
      complex(), [&](int s) { return lambda_space(s, p - 1).dim(); }, [&](int s) { return a_space(s, p).dim(); },
      [&](int s) { return wedge_map(s, p); });
}

std::vector<MatQ> LambdaSheaf::cech_quotient(int p) const {
  return assemble_facewise(
      complex(), [&](int s) { return a_space(s, p).dim(); }, [&](int s) { return lambda_space(s, p).dim(); },
      [&](int s) { return quotient_map(s, p); });
}

MatQ LambdaSheaf::monodromy_snake(int p, int q, LiftStrategy strategy, std::uint64_t seed) const {
  if (p < 1 || p > max_degree()) throw std::invalid_argument("monodromy_snake: need 1 <= p <= n+1");
  if (q < 0 || q > n()) throw std::invalid_argument("monodromy_snake: q out of range");
  return connecting_map(cech_complex(p - 1), cech_complex_a(p), cech_complex(p), cech_wedge(p), cech_quotient(p),
                        static_cast<std::size_t>(q), strategy, seed);
}

std::vector<std::vector<std::size_t>> LambdaSheaf::betti_table() const {
  std::vector<std::vector<std::size_t>> out;
  for (int p = 0; p <= n(); ++p) out.push_back(betti(cech_complex(p)));
  return out;
}

}  // namespace skeletal
