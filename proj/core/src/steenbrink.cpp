#include "skeletal/steenbrink.hpp"

#include <algorithm>
#include <stdexcept>

namespace skeletal {

const SteenbrinkRow::Component* SteenbrinkRow::find(std::size_t q, int r, int face) const {
  if (q >= terms.size()) return nullptr;
  for (const auto& c : terms[q])
    if (c.r == r && c.face == face) return &c;
  return nullptr;
}

namespace {

Vertex added_vertex(const Face& small, const Face& big) {
  for (auto v : big)
    if (!face_has(small, v)) return v;
  throw std::invalid_argument("faces are equal");
}

std::size_t at(const std::vector<std::size_t>& v, std::size_t i) { return i < v.size() ? v[i] : 0; }

}  // namespace

CochainComplexQ m_complex(const StrataModel& m, int p, int base) {
  const Complex& c = m.complex();
  if (p < 0) throw std::invalid_argument("m_complex: p >= 0");
  std::size_t bsize = base >= 0 ? c.face(base).size() : 0;
  std::vector<std::vector<int>> faces;
  for (int q = 0; q <= p; ++q) {
    std::vector<int> lst;
    std::size_t k = bsize + static_cast<std::size_t>(p - q);
    if (base >= 0) {
      for (int t : c.cofaces(base))
        if (c.face(t).size() == k) lst.push_back(t);
    } else if (k >= 1) {
      lst = c.of_size(k);
    }
    faces.push_back(std::move(lst));
  }
  std::vector<std::size_t> dims;
  std::vector<std::map<int, std::size_t>> offs;
  for (int q = 0; q <= p; ++q) {
    std::map<int, std::size_t> o;
    std::size_t tot = 0;
    for (int t : faces[q]) {
      o[t] = tot;
      tot += m.dim(t, q);
    }
    offs.push_back(std::move(o));
    dims.push_back(tot);
  }
  std::vector<MatQ> d;
  for (int q = 0; q < p; ++q) {
    MatQ mat(dims[q + 1], dims[q]);
    for (int t : faces[q]) {
      if (!m.dim(t, q)) continue;
      const Face& tf = c.face(t);
      for (auto i : tf) {
        if (base >= 0 && face_has(c.face(base), i)) continue;
        if (tf.size() < 2) continue;
        int s = c.id(boundary_face(i, tf));
        auto it = offs[q + 1].find(s);
        if (it == offs[q + 1].end() || !m.dim(s, q + 1)) continue;
        mat.add_block(it->second, offs[q].at(t), m.gys_matrix(t, s, q), Q(-sgn(i, tf) * m.N(i)));
      }
    }
    d.push_back(std::move(mat));
  }
  return CochainComplexQ::make(std::move(dims), std::move(d));
}

SteenbrinkRow row_complex(const StrataModel& m, int p) {
  const Complex& c = m.complex();
  int n = m.n();
  SteenbrinkRow row;
  row.p = p;
  std::vector<std::size_t> dims;
  for (int q = 0; q <= 2 * n + 1; ++q) {
    std::vector<SteenbrinkRow::Component> lst;
    std::size_t tot = 0;
    for (int r = 0; r <= std::min(p, q); ++r) {
      int k = p + q - 2 * r + 1;
      if (k < 1) continue;
      for (int t : c.of_size(static_cast<std::size_t>(k))) {
        std::size_t h = m.dim(t, r);
        if (!h) continue;
        lst.push_back({r, t, tot, h});
        tot += h;
      }
    }
    row.terms.push_back(std::move(lst));
    dims.push_back(tot);
  }
  while (dims.size() > 1 && dims.back() == 0) {
    dims.pop_back();
    row.terms.pop_back();
  }
  std::vector<MatQ> d;
  for (std::size_t q = 0; q + 1 < dims.size(); ++q) {
    MatQ mat(dims[q + 1], dims[q]);
    for (const auto& comp : row.terms[q]) {
      const Face& tf = c.face(comp.face);
      for (int u : c.covering(comp.face))
        if (const auto* tg = row.find(q + 1, comp.r, u))
          mat.add_block(tg->off, comp.off, m.res_matrix(comp.face, u, comp.r),
                        Q(sgn(added_vertex(tf, c.face(u)), c.face(u))));
      if (comp.r + 1 <= p && tf.size() >= 2)
        for (auto i : tf) {
          int s = c.id(boundary_face(i, tf));
          if (const auto* tg = row.find(q + 1, comp.r + 1, s))
            mat.add_block(tg->off, comp.off, m.gys_matrix(comp.face, s, comp.r), Q(-sgn(i, tf) * m.N(i)));
        }
    }
    d.push_back(std::move(mat));
  }
  row.cx = CochainComplexQ::make(std::move(dims), std::move(d));
  return row;
}

std::vector<MatQ> n_on_rows(const SteenbrinkRow& src, const SteenbrinkRow& dst) {
  std::vector<MatQ> out;
  for (std::size_t q = 0; q < src.cx.dims.size(); ++q) {
    std::size_t rows = q + 1 < dst.cx.dims.size() ? dst.cx.dims[q + 1] : 0;
    MatQ mat(rows, src.cx.dims[q]);
    if (rows)
      for (const auto& comp : src.terms[q])
        if (const auto* tg = dst.find(q + 1, comp.r, comp.face))
          for (std::size_t x = 0; x < comp.dim; ++x) mat(tg->off + x, comp.off + x) = 1;
    out.push_back(std::move(mat));
  }
  return out;
}

bool same_betti(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i)
    if (at(a, i) != at(b, i)) return false;
  return true;
}

TheoremAReport theorem_a_check(const LambdaSheaf& sheaf) {
  TheoremAReport rep;
  int n = sheaf.n();
  for (int p = 0; p <= n; ++p) {
    auto lb = betti(sheaf.cech_complex(p));
    auto rb = betti(row_complex(sheaf.model(), p).cx);
    std::size_t len = std::max(lb.size(), rb.size());
    for (std::size_t q = 0; q < len; ++q)
      if (at(lb, q) != at(rb, q)) {
        rep.ok = false;
        rep.mismatches.emplace_back(p, static_cast<int>(q));
      }
    lb.resize(n + 1);
    rb.resize(std::max<std::size_t>(rb.size(), n + 1));
    rep.lambda.push_back(lb);
    rep.rows.push_back(rb);
  }
  return rep;
}

bool NRanks::agree() const {
  std::size_t len = std::max({snake.size(), kcomplex.size(), rows.size()});
  for (std::size_t q = 0; q < len; ++q)
    if (at(snake, q) != at(kcomplex, q) || at(snake, q) != at(rows, q)) return false;
  return true;
}

std::vector<std::size_t> snake_n_ranks(const LambdaSheaf& sheaf, int p) {
  std::vector<std::size_t> out;
  for (int q = 0; q <= sheaf.n(); ++q) out.push_back(rank(sheaf.monodromy_snake(p, q)));
  return out;
}

MatQ kcomplex_n_matrix(const KResolution& kr, int p, int q) {
  TotalComplex a = kr.total_complex(p), b = kr.total_complex(p - 1);
  std::size_t t = static_cast<std::size_t>(q);
  if (t >= a.cx.dims.size()) return MatQ(0, 0);
  Cohomology src(a.cx, t);
  if (t + 1 >= b.cx.dims.size()) return MatQ(0, src.dim());
  return induced_map(src, Cohomology(b.cx, t + 1), kr.n_map(p, a, b)[t]);
}

MatQ row_n_matrix(const StrataModel& m, int p, int q) {
  SteenbrinkRow a = row_complex(m, p), b = row_complex(m, p - 1);
  std::size_t t = static_cast<std::size_t>(q);
  if (t >= a.cx.dims.size()) return MatQ(0, 0);
  Cohomology src(a.cx, t);
  if (t + 1 >= b.cx.dims.size()) return MatQ(0, src.dim());
  return induced_map(src, Cohomology(b.cx, t + 1), n_on_rows(a, b)[t]);
}

std::vector<std::size_t> kcomplex_n_ranks(const KResolution& kr, int p) {
  TotalComplex a = kr.total_complex(p), b = kr.total_complex(p - 1);
  auto nm = kr.n_map(p, a, b);
  std::vector<std::size_t> out;
  for (int q = 0; q <= kr.n(); ++q) {
    std::size_t t = static_cast<std::size_t>(q);
    if (t >= a.cx.dims.size() || t + 1 >= b.cx.dims.size()) {
      out.push_back(0);
      continue;
    }
    out.push_back(rank(induced_map(Cohomology(a.cx, t), Cohomology(b.cx, t + 1), nm[t])));
  }
  return out;
}

std::vector<std::size_t> row_n_ranks(const StrataModel& m, int p) {
  SteenbrinkRow a = row_complex(m, p), b = row_complex(m, p - 1);
  auto nm = n_on_rows(a, b);
  std::vector<std::size_t> out;
  for (int q = 0; q <= m.n(); ++q) {
    std::size_t t = static_cast<std::size_t>(q);
    if (t >= a.cx.dims.size() || t + 1 >= b.cx.dims.size()) {
      out.push_back(0);
      continue;
    }
    out.push_back(rank(induced_map(Cohomology(a.cx, t), Cohomology(b.cx, t + 1), nm[t])));
  }
  return out;
}

NRanks compare_n_ranks(const LambdaSheaf& sheaf, const KResolution& kr, int p) {
  NRanks r;
  r.p = p;
  r.snake = snake_n_ranks(sheaf, p);
  r.kcomplex = kcomplex_n_ranks(kr, p);
  r.rows = row_n_ranks(sheaf.model(), p);
  return r;
}

VecQ omega_at(const StrataModel& m, const Omega& omega, int face) {
  const Complex& c = m.complex();
  Vertex v = c.face(face).front();
  auto it = omega.find(v);
  if (it == omega.end()) throw std::invalid_argument("omega: no class at vertex " + std::to_string(v));
  return m.res_to_matrix(c.id(Face{v}), face, 1) * it->second;
}

LefschetzReport lefschetz_check(const StrataModel& m, const Omega& omega) {
  const Complex& c = m.complex();
  LefschetzReport rep;
  for (auto v : c.vertices()) {
    auto it = omega.find(v);
    int vid = c.id(Face{v});
    if (it == omega.end()) throw std::invalid_argument("omega: no class at vertex " + std::to_string(v));
    if (it->second.size() != m.dim(vid, 1))
      throw std::invalid_argument("omega: class at vertex " + std::to_string(v) + " has the wrong length");
  }
  std::vector<VecQ> at_face(c.size());
  for (std::size_t f = 0; f < c.size(); ++f) {
    int fi = static_cast<int>(f);
    if (c.codim(fi) < 1) continue;
    at_face[f] = omega_at(m, omega, fi);
    for (auto v : c.face(fi)) {
      VecQ w = m.res_to_matrix(c.id(Face{v}), fi, 1) * omega.at(v);
      if (w != at_face[f])
        throw std::invalid_argument("omega: classes disagree on face " + face_str(c.face(fi)));
    }
  }
  auto fail = [&](const std::string& s) {
    rep.ok = false;
    rep.failures.push_back(s);
  };
  if (m.n() == 2) {
    rep.positivity_checked = true;
    for (auto v : c.vertices()) {
      int vid = c.id(Face{v});
      GenVec g = m.lift(omega.at(v), vid, 1);
      Q sq = StrataModel::degree(m.cup(g, g, vid));
      rep.squares[v] = sq;
      if (sgn(sq) <= 0) fail("ω_" + std::to_string(v) + "² = " + format_rational(sq) + " is not positive");
    }
    for (int e : c.of_size(2)) {
      if (c.codim(e) < 1) continue;
      Q deg = StrataModel::degree(m.lift(at_face[e], e, 1));
      if (sgn(deg) == 0) fail("ω vanishes on the double stratum " + face_str(c.face(e)));
    }
  }
  for (std::size_t f = 0; f < c.size(); ++f) {
    int fi = static_cast<int>(f);
    int cd = c.codim(fi);
    for (int r = 0; 2 * r < cd; ++r) {
      MatQ l = MatQ::identity(m.dim(fi, r));
      for (int k = r; k < cd - r; ++k) l = m.cup_matrix(fi, at_face[f], 1, k) * l;
      ++rep.rank_checks;
      std::size_t src = m.dim(fi, r), dst = m.dim(fi, cd - r);
      if (src != dst || rank(l) != src)
        fail("L_ω^" + std::to_string(cd - 2 * r) + " on 'H^" + std::to_string(2 * r) + " of " +
             face_str(c.face(fi)) + " is not an isomorphism");
    }
  }
  return rep;
}

Omega build_omega_minus_one(const AffineSurfaceDatum& s, const StrataModel& m) {
  for (const auto& [flag, v] : s.d)
    if (v != 1)
      throw DatumError("not in (-1)-form: d at vertex " + std::to_string(flag.first) + " on edge to " +
                           std::to_string(flag.second) + " is " + std::to_string(v),
                       {std::min(flag.first, flag.second), std::max(flag.first, flag.second)});
  const Complex& c = m.complex();
  Omega out;
  for (auto v : c.vertices()) {
    int vid = c.id(Face{v});
    GenVec g;
    for (int e : c.covering(vid)) g[e] = 1;
    out[v] = m.reduce(g, vid, 1);
  }
  return out;
}

TheoremAPrimeReport theorem_a_prime_check(const LambdaSheaf& sheaf, const LefschetzReport& lefschetz) {
  TheoremAPrimeReport rep;
  if (!lefschetz.ok) {
    rep.skipped = "Lefschetz hypothesis fails";
    if (!lefschetz.failures.empty()) rep.skipped += ": " + lefschetz.failures.front();
    return rep;
  }
  rep.ran = true;
  int n = sheaf.n();
  rep.table = sheaf.betti_table();
  auto fail = [&](const std::string& s) {
    rep.ok = false;
    rep.failures.push_back(s);
  };
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q < p; ++q) {
      MatQ acc = MatQ::identity(rep.table[p][q]);
      for (int k = 0; k < p - q; ++k) acc = sheaf.monodromy_snake(p - k, q + k) * acc;
      if (acc.rows() != acc.cols() || rank(acc) != acc.cols())
        fail("N^" + std::to_string(p - q) + ": H^" + std::to_string(q) + "(Λ^" + std::to_string(p) + ") -> H^" +
             std::to_string(p) + "(Λ^" + std::to_string(q) + ") is not an isomorphism");
    }
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q)
      if (rep.table[n - q][n - p] != rep.table[p][q])
        fail("dim H^" + std::to_string(n - q) + "(Λ^" + std::to_string(n - p) + ") != dim H^" + std::to_string(q) +
             "(Λ^" + std::to_string(p) + ")");
  return rep;
}

MatQ n_on_total(const LambdaSheaf& sheaf, int k) {
  int n = sheaf.n();
  std::vector<int> ps;
  std::vector<std::size_t> dims, offs;
  std::size_t tot = 0;
  for (int p = 0; p <= std::min(k, n); ++p) {
    int q = k - p;
    if (q > n) continue;
    std::size_t h = at(betti(sheaf.cech_complex(p)), static_cast<std::size_t>(q));
    ps.push_back(p);
    dims.push_back(h);
    offs.push_back(tot);
    tot += h;
  }
  MatQ out(tot, tot);
  for (std::size_t a = 0; a < ps.size(); ++a) {
    int p = ps[a];
    if (p < 1 || !dims[a]) continue;
    auto prev = std::find(ps.begin(), ps.end(), p - 1);
    if (prev == ps.end()) continue;
    std::size_t b = prev - ps.begin();
    out.add_block(offs[b], offs[a], sheaf.monodromy_snake(p, k - p));
  }
  return out;
}

std::map<int, std::size_t> limit_weight_graded(const LambdaSheaf& sheaf, int k) {
  MatQ nm = n_on_total(sheaf, k);
  std::map<int, std::size_t> out;
  if (nm.rows() == 0) return out;
  auto w = weight_filtration(nm);
  int mm = static_cast<int>(w.size() - 1) / 2;
  std::size_t prev = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    std::size_t d = w[i].dim();
    if (d > prev) out[k - mm + static_cast<int>(i)] = d - prev;
    prev = d;
  }
  return out;
}

std::map<int, std::size_t> table_weight_graded(const LambdaSheaf& sheaf, int k) {
  std::map<int, std::size_t> out;
  int n = sheaf.n();
  for (int p = 0; p <= std::min(k, n); ++p) {
    int q = k - p;
    if (q > n) continue;
    std::size_t h = at(betti(sheaf.cech_complex(p)), static_cast<std::size_t>(q));
    if (h) out[2 * p] = h;
  }
  return out;
}

}  // namespace skeletal
