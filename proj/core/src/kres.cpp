#include "skeletal/kres.hpp"

#include <stdexcept>
#include <string>

#include "skeletal/parallel.hpp"

namespace skeletal {

const Ambient::Block* Ambient::find(int t) const {
  auto it = index.find(t);
  return it == index.end() ? nullptr : &blocks[it->second];
}

const TotalComplex::Piece* TotalComplex::find(std::size_t t, int q, int r, int face) const {
  if (t >= pieces.size()) return nullptr;
  for (const auto& p : pieces[t])
    if (p.q == q && p.r == r && p.face == face) return &p;
  return nullptr;
}

void add_kron(MatQ& m, std::size_t r0, std::size_t c0, const MatQ& a, const MatQ& b, const Q& s) {
  std::size_t br = b.rows(), bc = b.cols();
  for (std::size_t x = 0; x < a.rows(); ++x)
    for (std::size_t h = 0; h < a.cols(); ++h) {
      if (sgn(a(x, h)) == 0) continue;
      Q f = s * a(x, h);
      for (std::size_t y = 0; y < br; ++y)
        for (std::size_t l = 0; l < bc; ++l)
          if (sgn(b(y, l)) != 0) m(r0 + x * br + y, c0 + h * bc + l) += f * b(y, l);
    }
}

namespace {

// matrix of a linear map on monomials λ^m(src) -> λ^{m2}(dst)
template <class F>
MatQ forms_map(const LambdaForms& src, int m, const LambdaForms& dst, int m2, F f) {
  const auto& b = src.basis(m);
  MatQ out(dst.dim(m2), b.size());
  for (std::size_t l = 0; l < b.size(); ++l) {
    VecQ v = dst.reduce(f(b[l]), m2);
    for (std::size_t y = 0; y < v.size(); ++y) out(y, l) = v[y];
  }
  return out;
}

Vertex added_vertex(const Face& small, const Face& big) {
  for (auto v : big)
    if (!face_has(small, v)) return v;
  throw std::invalid_argument("faces are equal");
}

}  // namespace

KResolution::KResolution(const LambdaSheaf& sheaf, unsigned threads) : l_(sheaf) {
  const Complex& c = complex();
  for (std::size_t t = 0; t < c.size(); ++t) forms_.emplace(static_cast<int>(t), LambdaForms(c.face(t)));
  int top = n();
  std::vector<std::vector<std::pair<std::tuple<int, int, int>, Subspace>>> per(c.size());
  parallel_for(
      c.size(),
      [&](std::size_t s) {
        for (int p = 0; p <= top; ++p)
          for (int r = 0; r <= p; ++r)
            per[s].emplace_back(std::make_tuple(static_cast<int>(s), r, p), build_k(static_cast<int>(s), r, p));
      },
      threads);
  for (auto& v : per)
    for (auto& [key, sp] : v) k_.emplace(key, std::move(sp));
}

Ambient KResolution::ambient(int s, int r, int m) const {
  Ambient a;
  for (int t : complex().cofaces(s)) {
    std::size_t h = r >= 0 ? model().dim(t, r) : 0;
    std::size_t l = m >= 0 ? forms(t).dim(m) : 0;
    a.index[t] = a.blocks.size();
    a.blocks.push_back({t, a.dim, h, l});
    a.dim += h * l;
  }
  return a;
}

namespace {

// product families reduce(res_to(a)) ⊗ reduce(b|τ), ordered by (class, monomial)
std::vector<VecQ> product_vectors(const KResolution& kr, int s, int r, int m) {
  const LambdaSheaf& L = kr.sheaf();
  const StrataModel& sm = kr.model();
  const Complex& c = kr.complex();
  Ambient amb = kr.ambient(s, r, m);
  std::vector<VecQ> out;
  if (r < 0 || m < 0 || m > L.max_degree()) return out;
  std::size_t hs = sm.dim(s, r);
  if (!hs) return out;
  std::vector<MatQ> res;
  for (const auto& b : amb.blocks) res.push_back(sm.res_to_matrix(s, b.face, r));
  const auto& mons = L.abar_monomials(s, m);
  for (std::size_t hh = 0; hh < hs; ++hh)
    for (auto bi : L.lbar_basis(s, m)) {
      const Monomial& mon = mons[bi];
      VecQ v(amb.dim);
      for (std::size_t k = 0; k < amb.blocks.size(); ++k) {
        const auto& b = amb.blocks[k];
        if (!b.h || !b.l || !face_contains(c.face(b.face), mon)) continue;
        VecQ bt = kr.forms(b.face).reduce(Multivector{{mon, Q(1)}}, m);
        for (std::size_t x = 0; x < b.h; ++x) {
          const Q& ax = res[k](x, hh);
          if (sgn(ax) == 0) continue;
          for (std::size_t y = 0; y < b.l; ++y)
            if (sgn(bt[y]) != 0) v[b.off + x * b.l + y] += ax * bt[y];
        }
      }
      out.push_back(std::move(v));
    }
  return out;
}

}  // namespace

Subspace KResolution::build_k(int s, int r, int p) const {
  return Subspace::span(product_vectors(*this, s, r, p - r), ambient(s, r, p - r).dim);
}

const Subspace& KResolution::k_space(int s, int r, int p) const {
  auto it = k_.find({s, r, p});
  if (it == k_.end())
    throw std::out_of_range("k_space: (r, p) = (" + std::to_string(r) + ", " + std::to_string(p) + ") not built");
  return it->second;
}

MatQ KResolution::k0_embedding(int s, int p) const {
  return MatQ::from_columns(product_vectors(*this, s, 0, p), ambient(s, 0, p).dim);
}

MatQ KResolution::d_prime_ambient(int s, int r, int m, Vertex k, bool only_sigma) const {
  const Complex& c = complex();
  const Face& sf = c.face(s);
  if (!face_has(sf, k)) throw std::invalid_argument("d_prime: base vertex not in the face");
  Ambient a0 = ambient(s, r, m), a1 = ambient(s, r + 1, m - 1);
  MatQ out(a1.dim, a0.dim);
  if (m < 1) return out;
  for (const auto& b : a0.blocks) {
    if (!b.h || !b.l) continue;
    int t = b.face;
    const Face& tf = c.face(t);
    const LambdaForms& lt = forms(t);
    for (auto i : tf) {
      Q ni = model().N(i);
      if (!face_has(sf, i)) {
        int tgt = c.id(boundary_face(i, tf));
        const auto* b1 = a1.find(tgt);
        if (b1 && b1->h && b1->l) {
          const Face& gf = c.face(tgt);
          MatQ lm = forms_map(lt, m, forms(tgt), m - 1, [&](const Monomial& mon) {
            return keep_within(derivation(i, k, Multivector{{mon, Q(1)}}), gf);
          });
          add_kron(out, b1->off, b.off, model().gys_matrix(t, tgt, r), lm, ni);
        }
      }
      if (only_sigma && !face_has(sf, i)) continue;
      const auto* b1 = a1.find(t);
      if (b1 && b1->h && b1->l) {
        MatQ lm = forms_map(lt, m, lt, m - 1,
                            [&](const Monomial& mon) { return derivation(i, k, Multivector{{mon, Q(1)}}); });
        add_kron(out, b1->off, b.off, model().xi_cup_matrix(t, i, r), lm, ni);
      }
    }
  }
  return out;
}

MatQ KResolution::d_prime(int s, int r, int p, Vertex k) const {
  const Subspace& src = k_space(s, r, p);
  if (r + 1 > p) return MatQ(0, src.dim());
  const Subspace& dst = k_space(s, r + 1, p);
  MatQ d = d_prime_ambient(s, r, p - r, k);
  MatQ out(dst.dim(), src.dim());
  for (std::size_t j = 0; j < src.dim(); ++j) {
    auto c = dst.coords(d * src.vector(j));
    if (!c)
      throw std::domain_error("d' leaves K at face " + face_str(complex().face(s)) + ", r = " + std::to_string(r) +
                              ", p = " + std::to_string(p));
    for (std::size_t i = 0; i < c->size(); ++i) out(i, j) = (*c)[i];
  }
  return out;
}

MatQ KResolution::d_second_ambient(int s, int a, int r, int m) const {
  const Complex& c = complex();
  if (c.face(a).size() != c.face(s).size() + 1 || !face_contains(c.face(a), c.face(s)))
    throw std::invalid_argument("d_second: not a covering pair");
  Q sg = sgn(added_vertex(c.face(s), c.face(a)), c.face(a));
  Ambient a0 = ambient(s, r, m), a1 = ambient(a, r, m);
  MatQ out(a1.dim, a0.dim);
  for (const auto& b : a1.blocks) {
    const auto* b0 = a0.find(b.face);
    for (std::size_t x = 0; x < b.h * b.l; ++x) out(b.off + x, b0->off + x) = sg;
  }
  return out;
}

MatQ KResolution::d_second(int s, int a, int r, int p) const {
  const Subspace& src = k_space(s, r, p);
  const Subspace& dst = k_space(a, r, p);
  MatQ d = d_second_ambient(s, a, r, p - r);
  MatQ out(dst.dim(), src.dim());
  for (std::size_t j = 0; j < src.dim(); ++j) {
    auto c = dst.coords(d * src.vector(j));
    if (!c) throw std::domain_error("d'' leaves K from face " + face_str(complex().face(s)));
    for (std::size_t i = 0; i < c->size(); ++i) out(i, j) = (*c)[i];
  }
  return out;
}

CochainComplexQ KResolution::resolution_complex(int s, int p) const {
  std::vector<std::size_t> dims;
  std::vector<MatQ> d;
  Vertex k = complex().face(s).front();
  for (int r = 0; r <= p; ++r) dims.push_back(k_space(s, r, p).dim());
  for (int r = 0; r < p; ++r) d.push_back(d_prime(s, r, p, k));
  return CochainComplexQ::make(std::move(dims), std::move(d));
}

TotalComplex KResolution::total_complex(int p) const {
  const Complex& c = complex();
  int nn = n();
  TotalComplex tc;
  std::vector<std::size_t> dims;
  for (int t = 0; t <= nn + p; ++t) {
    std::vector<TotalComplex::Piece> lst;
    std::size_t tot = 0;
    for (int r = 0; r <= p; ++r) {
      int q = t - r;
      if (q < 0 || q > nn) continue;
      for (int s : c.of_size(q + 1)) {
        std::size_t dm = k_space(s, r, p).dim();
        if (!dm) continue;
        lst.push_back({q, r, s, tot, dm});
        tot += dm;
      }
    }
    tc.pieces.push_back(std::move(lst));
    dims.push_back(tot);
  }
  std::vector<MatQ> d;
  for (std::size_t t = 0; t + 1 < dims.size(); ++t) {
    MatQ m(dims[t + 1], dims[t]);
    for (const auto& pc : tc.pieces[t]) {
      Vertex k = c.face(pc.face).front();
      if (pc.r + 1 <= p) {
        MatQ dp = d_prime(pc.face, pc.r, p, k);
        if (const auto* tg = tc.find(t + 1, pc.q, pc.r + 1, pc.face)) m.add_block(tg->off, pc.off, dp);
      }
      for (int a : c.covering(pc.face))
        if (const auto* tg = tc.find(t + 1, pc.q + 1, pc.r, a))
          m.add_block(tg->off, pc.off, d_second(pc.face, a, pc.r, p), Q(pc.r % 2 ? -1 : 1));
    }
    d.push_back(std::move(m));
  }
  tc.cx = CochainComplexQ::make(std::move(dims), std::move(d));
  return tc;
}

std::vector<MatQ> KResolution::n_map(int p) const { return n_map(p, total_complex(p), total_complex(p - 1)); }

std::vector<MatQ> KResolution::n_map(int p, const TotalComplex& src, const TotalComplex& dst) const {
  if (p < 1) throw std::invalid_argument("n_map: p >= 1");
  const Complex& c = complex();
  std::vector<MatQ> out;
  for (std::size_t t = 0; t < src.cx.dims.size(); ++t) {
    std::size_t rows = t + 1 < dst.cx.dims.size() ? dst.cx.dims[t + 1] : 0;
    MatQ m(rows, src.cx.dims[t]);
    if (rows)
      for (const auto& pc : src.pieces[t]) {
        int mm = p - pc.r;
        const Face& s0 = c.face(pc.face);
        for (int sg : c.covering(pc.face)) {
          const Face& gf = c.face(sg);
          if (face_has(s0, gf.back())) continue;  // s0 must be sg minus its top vertex
          const auto* tg = dst.find(t + 1, pc.q + 1, pc.r, sg);
          if (!tg) continue;
          Vertex j = gf[gf.size() - 2], k = gf.back();
          Ambient a0 = ambient(pc.face, pc.r, mm), a1 = ambient(sg, pc.r, mm - 1);
          MatQ na(a1.dim, a0.dim);
          for (const auto& b : a1.blocks) {
            if (!b.h || !b.l) continue;
            const auto* b0 = a0.find(b.face);
            const LambdaForms& lt = forms(b.face);
            MatQ lm = forms_map(lt, mm, lt, mm - 1,
                                [&](const Monomial& mon) { return derivation(j, k, Multivector{{mon, Q(1)}}); });
            add_kron(na, b.off, b0->off, MatQ::identity(b.h), lm, Q(pc.r % 2 ? -1 : 1));
          }
          const Subspace& from = k_space(pc.face, pc.r, p);
          const Subspace& to = k_space(sg, pc.r, p - 1);
          for (std::size_t col = 0; col < from.dim(); ++col) {
            auto cc = to.coords(na * from.vector(col));
            if (!cc) throw std::domain_error("N leaves K at face " + face_str(gf));
            for (std::size_t i = 0; i < cc->size(); ++i) m(tg->off + i, pc.off + col) += (*cc)[i];
          }
        }
      }
    out.push_back(std::move(m));
  }
  return out;
}

Subspace KResolution::h0_kernel(int s, int p) const {
  MatQ e = k0_embedding(s, p);
  MatQ d = d_prime_ambient(s, 0, p, complex().face(s).front()) * e;
  return d.rows() ? rank_kernel(d).kernel : Subspace::whole(d.cols());
}

bool KResolution::check_compatibility(int s, int r, int p, std::string* why) const {
  const Complex& c = complex();
  int m = p - r;
  Ambient amb = ambient(s, r, m);
  const Subspace& k = k_space(s, r, p);
  for (const auto& b : amb.blocks)
    for (int u : c.covering(b.face)) {
      const auto* bu = amb.find(u);
      if (!bu) continue;
      const MatQ& res = model().res_matrix(b.face, u, r);
      const Face& tf = c.face(b.face);
      MatQ keep = forms_map(forms(u), m, forms(b.face), m,
                            [&](const Monomial& mon) { return keep_within(Multivector{{mon, Q(1)}}, tf); });
      for (std::size_t j = 0; j < k.dim(); ++j) {
        VecQ v = k.vector(j);
        MatQ vt(b.h, b.l), vu(bu->h, bu->l);
        for (std::size_t x = 0; x < b.h; ++x)
          for (std::size_t y = 0; y < b.l; ++y) vt(x, y) = v[b.off + x * b.l + y];
        for (std::size_t x = 0; x < bu->h; ++x)
          for (std::size_t y = 0; y < bu->l; ++y) vu(x, y) = v[bu->off + x * bu->l + y];
        MatQ lhs = b.h ? res * vt : MatQ(bu->h, b.l);
        MatQ rhs = bu->l ? vu * keep.transpose() : MatQ(bu->h, b.l);
        if (!(lhs == rhs)) {
          if (why) *why = "family not compatible between " + face_str(tf) + " and " + face_str(c.face(u));
          return false;
        }
      }
    }
  return true;
}

CochainComplexQ residue_complex(const Face& tau, int n) {
  if (n < 0 || n >= static_cast<int>(tau.size())) throw std::invalid_argument("residue_complex: need n < |tau|");
  std::vector<std::vector<Face>> terms;
  std::vector<std::size_t> dims;
  std::map<Face, LambdaForms> forms;
  for (int i = 0; i <= n; ++i) {
    auto subs = subsets_of_size(tau, static_cast<int>(tau.size()) - (n - i));
    std::size_t tot = 0;
    for (const auto& s : subs) {
      auto it = forms.emplace(s, LambdaForms(s)).first;
      tot += it->second.dim(i);
    }
    terms.push_back(subs);
    dims.push_back(tot);
  }
  std::vector<MatQ> d;
  for (int i = 0; i < n; ++i) {
    std::map<Face, std::size_t> off1;
    std::size_t c1 = 0;
    for (const auto& a : terms[i + 1]) {
      off1[a] = c1;
      c1 += forms.at(a).dim(i + 1);
    }
    MatQ m(dims[i + 1], dims[i]);
    std::size_t c0 = 0;
    for (const auto& s : terms[i]) {
      const LambdaForms& ls = forms.at(s);
      for (std::size_t b = 0; b < ls.dim(i); ++b) {
        const Monomial& mon = ls.basis(i)[b];
        for (auto l : tau) {
          if (face_has(s, l)) continue;
          Face a = face_with(s, l);
          auto w = wedge_vertex(l, mon);
          if (!w) continue;
          VecQ v = forms.at(a).reduce(Multivector{{w->second, Q(w->first)}}, i + 1);
          for (std::size_t y = 0; y < v.size(); ++y)
            if (sgn(v[y]) != 0) m(off1[a] + y, c0 + b) += sgn(l, tau) * v[y];
        }
      }
      c0 += ls.dim(i);
    }
    d.push_back(std::move(m));
  }
  return CochainComplexQ::make(std::move(dims), std::move(d));
}

}  // namespace skeletal
