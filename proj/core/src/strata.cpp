#include "skeletal/strata.hpp"

#include <algorithm>

namespace skeletal {

std::vector<Face> generators(const Complex& c, const Face& tau, int r) {
  std::vector<Face> out;
  int t = c.id(tau);
  if (t < 0 || r < 0) return out;
  for (int a : c.cofaces(t))
    if (c.face(a).size() == tau.size() + static_cast<std::size_t>(r)) out.push_back(c.face(a));
  return out;
}

namespace {

void add_into(GenVec& out, int key, const Q& c) {
  if (sgn(c) == 0) return;
  Q& x = out[key];
  x += c;
  if (sgn(x) == 0) out.erase(key);
}

}  // namespace

StrataModel::StrataModel(DegenerationDatum d) : d_(std::move(d)) {
  for (auto v : d_.complex.vertices()) {
    auto it = d_.multiplicity.find(v);
    if (it == d_.multiplicity.end()) throw DatumError("missing multiplicity for vertex " + std::to_string(v), {v});
    if (it->second <= 0) throw DatumError("multiplicity must be positive at vertex " + std::to_string(v), {v});
  }
  // fill the restriction memo; afterwards lookups are read-only
  const Complex& c = d_.complex;
  for (int t = static_cast<int>(c.size()) - 1; t >= 0; --t)
    for (int u : c.covering(t)) {
      Vertex j = 0;
      for (auto v : c.face(u))
        if (!face_has(c.face(t), v)) j = v;
      for (int a : c.cofaces(t)) res_gen(a, t, j);
    }
  build_spaces();
  build_matrices();
}

GenVec StrataModel::xi_gen(int t, Vertex i) const {
  GenVec out;
  const Complex& c = d_.complex;
  auto it = d_.self_classes.find({c.face(t), i});
  if (it == d_.self_classes.end()) return out;
  std::vector<Face> g = generators(c, c.face(t), 1);
  for (std::size_t k = 0; k < g.size() && k < it->second.size(); ++k) add_into(out, c.id(g[k]), it->second[k]);
  return out;
}

GenVec StrataModel::res_gen(int alpha, int t, Vertex j) const {
  auto key = std::make_tuple(alpha, t, j);
  {
    std::lock_guard<std::mutex> lk(*memo_mu_);
    auto it = res_memo_.find(key);
    if (it != res_memo_.end()) return it->second;
  }
  const Complex& c = d_.complex;
  GenVec out;
  int t2 = c.id(face_with(c.face(t), j));
  if (t2 >= 0 && !face_has(c.face(t), j)) {
    const Face& af = c.face(alpha);
    if (!face_has(af, j)) {
      int b = c.id(face_with(af, j));
      if (b >= 0) out[b] = 1;
    } else {
      out = cup(xi_gen(t2, j), GenVec{{alpha, Q(1)}}, t2);
    }
  }
  std::lock_guard<std::mutex> lk(*memo_mu_);
  res_memo_.emplace(key, out);
  return out;
}

GenVec StrataModel::res(const GenVec& y, int t, Vertex j) const {
  GenVec out;
  for (const auto& [a, c] : y)
    for (const auto& [b, e] : res_gen(a, t, j)) add_into(out, b, c * e);
  return out;
}

GenVec StrataModel::res_to_ordered(const GenVec& y, int t, const std::vector<Vertex>& order) const {
  const Complex& c = d_.complex;
  GenVec cur = y;
  int at = t;
  for (auto j : order) {
    if (face_has(c.face(at), j)) continue;
    int nxt = c.id(face_with(c.face(at), j));
    if (nxt < 0) throw std::invalid_argument("res_to: target is not a coface");
    cur = res(cur, at, j);
    at = nxt;
  }
  return cur;
}

GenVec StrataModel::res_to(const GenVec& y, int t, int target) const {
  if (!face_contains(complex().face(target), complex().face(t)))
    throw std::invalid_argument("res_to: target is not a coface");
  return res_to_ordered(y, t, complex().face(target));
}

GenVec StrataModel::cup(const GenVec& x, const GenVec& y, int t) const {
  GenVec out;
  for (const auto& [a, c] : x)
    for (const auto& [b, e] : res_to(y, t, a)) add_into(out, b, c * e);
  return out;
}

Q StrataModel::degree(const GenVec& y) {
  Q s = 0;
  for (const auto& [a, c] : y) s += c;
  return s;
}

void StrataModel::build_spaces() {
  const Complex& c = d_.complex;
  for (int t = 0; t < static_cast<int>(c.size()); ++t) {
    int cd = c.codim(t);
    for (int r = 0; r <= cd; ++r) {
      Space sp;
      sp.face = t;
      sp.degree = r;
      for (int a : c.cofaces(t))
        if (c.face(a).size() == c.face(t).size() + r) sp.gens.push_back(a);
      for (std::size_t k = 0; k < sp.gens.size(); ++k) sp.pos[sp.gens[k]] = k;
      std::vector<VecQ> rels;
      if (d_.mode == RelationMode::pairing) {
        std::vector<int> dual;
        for (int a : c.cofaces(t))
          if (c.face(a).size() == c.face(t).size() + (cd - r)) dual.push_back(a);
        MatQ g(dual.size(), sp.gens.size());  // transposed Gram
        for (std::size_t i = 0; i < sp.gens.size(); ++i)
          for (std::size_t j = 0; j < dual.size(); ++j)
            g(j, i) = degree(cup(GenVec{{sp.gens[i], Q(1)}}, GenVec{{dual[j], Q(1)}}, t));
        Subspace k = rank_kernel(g).kernel;
        for (std::size_t h = 0; h < k.dim(); ++h) rels.push_back(k.vector(h));
      } else {
        auto it = d_.relations.find({c.face(t), r});
        if (it != d_.relations.end())
          for (const auto& v : it->second) {
            if (v.size() != sp.gens.size())
              throw DatumError("relation at face " + face_str(c.face(t)) + " degree " + std::to_string(r) +
                                   " has length " + std::to_string(v.size()) + ", expected " +
                                   std::to_string(sp.gens.size()),
                               c.face(t));
            rels.push_back(v);
          }
      }
      Echelon e = row_echelon(MatQ::from_rows(rels, sp.gens.size()));
      sp.relations = std::move(e.rref);
      sp.pivots = std::move(e.pivots);
      std::vector<bool> piv(sp.gens.size(), false);
      for (auto p : sp.pivots) piv[p] = true;
      for (std::size_t k = 0; k < sp.gens.size(); ++k)
        if (!piv[k]) sp.basis.push_back(k);
      spaces_.emplace(std::make_pair(t, r), std::move(sp));
    }
  }
}

const StrataModel::Space& StrataModel::space(int t, int r) const {
  static const Space empty;
  auto it = spaces_.find({t, r});
  return it == spaces_.end() ? empty : it->second;
}

std::size_t StrataModel::dim(int t, int r) const { return space(t, r).basis.size(); }

VecQ StrataModel::reduce(const GenVec& y, int t, int r) const {
  const Space& sp = space(t, r);
  VecQ v(sp.gens.size());
  for (const auto& [a, c] : y) {
    auto it = sp.pos.find(a);
    if (it == sp.pos.end())
      throw std::invalid_argument("reduce: face " + face_str(complex().face(a)) + " is not a generator of degree " +
                                  std::to_string(r) + " at " + face_str(complex().face(t)));
    v[it->second] += c;
  }
  for (std::size_t k = 0; k < sp.pivots.size(); ++k) {
    Q f = v[sp.pivots[k]];
    if (sgn(f) == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (sgn(sp.relations(k, j))) v[j] -= f * sp.relations(k, j);
  }
  VecQ out(sp.basis.size());
  for (std::size_t k = 0; k < sp.basis.size(); ++k) out[k] = v[sp.basis[k]];
  return out;
}

GenVec StrataModel::lift(const VecQ& coords, int t, int r) const {
  const Space& sp = space(t, r);
  if (coords.size() != sp.basis.size()) throw std::invalid_argument("lift: length mismatch");
  GenVec out;
  for (std::size_t k = 0; k < coords.size(); ++k) add_into(out, sp.gens[sp.basis[k]], coords[k]);
  return out;
}

GenVec StrataModel::basis_gen(int t, int r, std::size_t h) const {
  const Space& sp = space(t, r);
  return GenVec{{sp.gens[sp.basis.at(h)], Q(1)}};
}

void StrataModel::build_matrices() {
  const Complex& c = d_.complex;
  for (int t = 0; t < static_cast<int>(c.size()); ++t) {
    int cd = c.codim(t);
    for (int r = 0; r <= cd; ++r) {
      std::size_t dt = dim(t, r);
      for (int u : c.covering(t)) {
        Vertex j = 0;
        for (auto v : c.face(u))
          if (!face_has(c.face(t), v)) j = v;
        MatQ m(dim(u, r), dt);
        if (r <= c.codim(u))
          for (std::size_t h = 0; h < dt; ++h) {
            VecQ col = reduce(res(basis_gen(t, r, h), t, j), u, r);
            for (std::size_t i = 0; i < col.size(); ++i) m(i, h) = col[i];
          }
        res_mats_.emplace(std::make_tuple(t, u, r), std::move(m));
      }
      if (c.face(t).size() >= 2)
        for (auto i : c.face(t)) {
          int s = c.id(boundary_face(i, c.face(t)));
          MatQ m(dim(s, r + 1), dt);
          for (std::size_t h = 0; h < dt; ++h) {
            VecQ col = reduce(basis_gen(t, r, h), s, r + 1);
            for (std::size_t k = 0; k < col.size(); ++k) m(k, h) = col[k];
          }
          gys_mats_.emplace(std::make_tuple(t, s, r), std::move(m));
        }
      if (r + 1 <= cd)
        for (auto i : c.face(t)) {
          GenVec x = xi_gen(t, i);
          MatQ m(dim(t, r + 1), dt);
          for (std::size_t h = 0; h < dt; ++h) {
            VecQ col = reduce(cup(x, basis_gen(t, r, h), t), t, r + 1);
            for (std::size_t k = 0; k < col.size(); ++k) m(k, h) = col[k];
          }
          xi_mats_.emplace(std::make_tuple(t, i, r), std::move(m));
        }
    }
  }
}

const MatQ& StrataModel::res_matrix(int t, int u, int r) const {
  auto it = res_mats_.find({t, u, r});
  if (it == res_mats_.end()) {
    if (!face_contains(complex().face(u), complex().face(t)) || complex().face(u).size() != complex().face(t).size() + 1)
      throw std::invalid_argument("res_matrix: not a covering pair");
    static const MatQ none;
    return none;
  }
  return it->second;
}

MatQ StrataModel::res_to_matrix(int t, int u, int r) const {
  const Complex& c = complex();
  if (!face_contains(c.face(u), c.face(t))) throw std::invalid_argument("res_to_matrix: not a coface");
  MatQ m = MatQ::identity(dim(t, r));
  int at = t;
  for (auto j : c.face(u)) {
    if (face_has(c.face(at), j)) continue;
    int nxt = c.id(face_with(c.face(at), j));
    const MatQ& step = res_matrix(at, nxt, r);
    if (step.rows() != dim(nxt, r) || step.cols() != dim(at, r)) return MatQ(dim(u, r), dim(t, r));
    m = step * m;
    at = nxt;
  }
  return m;
}

const MatQ& StrataModel::gys_matrix(int t, int s, int r) const {
  auto it = gys_mats_.find({t, s, r});
  if (it == gys_mats_.end()) throw std::invalid_argument("gys_matrix: not a covering pair in range");
  return it->second;
}

const MatQ& StrataModel::xi_cup_matrix(int t, Vertex i, int r) const {
  auto it = xi_mats_.find({t, i, r});
  if (it == xi_mats_.end()) throw std::invalid_argument("xi_cup_matrix: out of range");
  return it->second;
}

VecQ StrataModel::xi(int t, Vertex i) const { return reduce(xi_gen(t, i), t, 1); }

MatQ StrataModel::cup_matrix(int t, const VecQ& x, int rx, int ry) const {
  std::size_t dy = dim(t, ry);
  MatQ m(dim(t, rx + ry), dy);
  if (rx + ry > complex().codim(t)) return m;
  GenVec gx = lift(x, t, rx);
  for (std::size_t h = 0; h < dy; ++h) {
    VecQ col = reduce(cup(gx, basis_gen(t, ry, h), t), t, rx + ry);
    for (std::size_t k = 0; k < col.size(); ++k) m(k, h) = col[k];
  }
  return m;
}

// ---- FormalClass ----

FormalClass StrataModel::from_coords(const Face& f, int r, const VecQ& c) const {
  int t = complex().id(f);
  const Space& sp = space(t, r);
  FormalClass a{f, r, VecQ(sp.gens.size())};
  for (std::size_t k = 0; k < c.size(); ++k) a.coeffs[sp.basis[k]] = c[k];
  return a;
}

FormalClass StrataModel::normal_form(const Face& f, int r, const GenVec& y) const {
  int t = complex().id(f);
  if (t < 0) throw std::invalid_argument("normal_form: not a face");
  if (r > complex().codim(t)) return FormalClass{f, r, {}};
  return from_coords(f, r, reduce(y, t, r));
}

FormalClass StrataModel::unit(const Face& f) const { return generator(f, f); }

FormalClass StrataModel::generator(const Face& tau, const Face& alpha) const {
  int a = complex().id(alpha);
  if (a < 0 || !face_contains(alpha, tau)) throw std::invalid_argument("generator: alpha must be a coface of tau");
  return normal_form(tau, static_cast<int>(alpha.size() - tau.size()), GenVec{{a, Q(1)}});
}

GenVec StrataModel::to_gen(const FormalClass& a) const {
  int t = complex().id(a.face);
  const Space& sp = space(t, a.degree);
  GenVec out;
  for (std::size_t k = 0; k < a.coeffs.size() && k < sp.gens.size(); ++k) add_into(out, sp.gens[k], a.coeffs[k]);
  return out;
}

VecQ StrataModel::coords(const FormalClass& a) const {
  return reduce(to_gen(a), complex().id(a.face), a.degree);
}

FormalClass StrataModel::res(const FormalClass& a, const Face& tau) const {
  int s = complex().id(a.face), t = complex().id(tau);
  if (t < 0 || !face_contains(tau, a.face)) throw std::invalid_argument("res: target is not a coface");
  return normal_form(tau, a.degree, res_to(to_gen(a), s, t));
}

FormalClass StrataModel::gys(const FormalClass& a, const Face& sigma) const {
  if (complex().id(sigma) < 0 || !face_contains(a.face, sigma)) throw std::invalid_argument("gys: not a subface");
  return normal_form(sigma, a.degree + static_cast<int>(a.face.size() - sigma.size()), to_gen(a));
}

FormalClass StrataModel::cup(const FormalClass& a, const FormalClass& b) const {
  if (a.face != b.face) throw std::invalid_argument("cup: classes live on different strata");
  int t = complex().id(a.face);
  int r = a.degree + b.degree;
  if (r > complex().codim(t)) return FormalClass{a.face, r, {}};
  return normal_form(a.face, r, cup(to_gen(a), to_gen(b), t));
}

Q StrataModel::degree(const FormalClass& a) const {
  Q s = 0;
  if (a.degree != complex().codim(complex().id(a.face))) return s;
  for (const auto& x : a.coeffs) s += x;
  return s;
}

bool StrataModel::is_zero(const FormalClass& a) const { return skeletal::is_zero(coords(a)); }

// ---- levels ----

std::vector<std::size_t> StrataModel::level_offsets(int k, int r) const {
  std::vector<std::size_t> off{0};
  for (int t : complex().of_size(k)) off.push_back(off.back() + dim(t, r));
  return off;
}

std::size_t StrataModel::level_dim(int k, int r) const { return level_offsets(k, r).back(); }

MatQ StrataModel::gamma_matrix(int k, int r, bool weighted) const {
  const Complex& c = complex();
  auto src = level_offsets(k, r);
  if (k < 2) return MatQ(0, src.back());
  auto dst = level_offsets(k - 1, r + 1);
  MatQ m(dst.back(), src.back());
  const auto& lo = c.of_size(k - 1);
  const auto& hi = c.of_size(k);
  for (std::size_t a = 0; a < hi.size(); ++a) {
    int t = hi[a];
    if (r > c.codim(t)) continue;  // zero space
    for (auto i : c.face(t)) {
      int s = c.id(boundary_face(i, c.face(t)));
      std::size_t b = std::lower_bound(lo.begin(), lo.end(), s) - lo.begin();
      Q w = sgn(i, c.face(t));
      if (weighted) w *= N(i);
      m.add_block(dst[b], src[a], gys_matrix(t, s, r), w);
    }
  }
  return m;
}

MatQ StrataModel::rho_matrix(int k, int r) const {
  const Complex& c = complex();
  auto src = level_offsets(k, r);
  auto dst = level_offsets(k + 1, r);
  MatQ m(dst.back(), src.back());
  const auto& lo = c.of_size(k);
  const auto& hi = c.of_size(k + 1);
  for (std::size_t a = 0; a < lo.size(); ++a) {
    int t = lo[a];
    for (int u : c.covering(t)) {
      Vertex j = 0;
      for (auto v : c.face(u))
        if (!face_has(c.face(t), v)) j = v;
      std::size_t b = std::lower_bound(hi.begin(), hi.end(), u) - hi.begin();
      const MatQ& rm = res_matrix(t, u, r);
      if (rm.rows() == dst[b + 1] - dst[b] && rm.cols() == src[a + 1] - src[a])
        m.add_block(dst[b], src[a], rm, Q(sgn(j, c.face(u))));
    }
  }
  return m;
}

// ---- validation ----

DatumReport validate_datum(const StrataModel& m) {
  DatumReport rep;
  const Complex& c = m.complex();
  const DegenerationDatum& d = m.datum();
  int nf = static_cast<int>(c.size());

  // self classes present and well-sized
  for (int t = 0; t < nf; ++t) {
    if (c.codim(t) < 1) continue;
    std::size_t ng = generators(c, c.face(t), 1).size();
    for (auto i : c.face(t)) {
      rep.checked["self class"]++;
      auto it = d.self_classes.find({c.face(t), i});
      if (it == d.self_classes.end())
        rep.fail("self class", c.face(t), "missing self class of vertex " + std::to_string(i));
      else if (it->second.size() != ng)
        rep.fail("self class", c.face(t), "self class of vertex " + std::to_string(i) + " has the wrong length");
    }
  }
  if (!rep.ok) return rep;

  // principal divisor identity
  for (int t = 0; t < nf; ++t) {
    if (c.codim(t) < 1) continue;
    rep.checked["principal divisor identity"]++;
    GenVec y;
    for (auto i : c.face(t))
      for (const auto& [a, x] : m.xi_gen(t, i)) y[a] += Q(m.N(i)) * x;
    for (int u : c.covering(t)) {
      Vertex j = 0;
      for (auto v : c.face(u))
        if (!face_has(c.face(t), v)) j = v;
      y[u] += Q(m.N(j));
    }
    VecQ z = m.reduce(y, t, 1);
    if (!is_zero(z)) rep.fail("principal divisor identity", c.face(t), "sum is nonzero in degree-2 classes");
  }

  // relation closure under res and gys
  for (int t = 0; t < nf; ++t)
    for (int r = 0; r <= c.codim(t); ++r) {
      const auto& sp = m.space(t, r);
      for (std::size_t k = 0; k < sp.pivots.size(); ++k) {
        GenVec v;
        for (std::size_t g = 0; g < sp.gens.size(); ++g)
          if (sgn(sp.relations(k, g))) v[sp.gens[g]] = sp.relations(k, g);
        for (int u : c.covering(t)) {
          if (r > c.codim(u)) continue;
          rep.checked["relation closure"]++;
          Vertex j = 0;
          for (auto x : c.face(u))
            if (!face_has(c.face(t), x)) j = x;
          if (!is_zero(m.reduce(m.res(v, t, j), u, r)))
            rep.fail("relation closure", c.face(t),
                     "restriction to " + face_str(c.face(u)) + " of a degree-" + std::to_string(r) + " relation is nonzero");
        }
        if (c.face(t).size() >= 2)
          for (auto i : c.face(t)) {
            rep.checked["relation closure"]++;
            int s = c.id(boundary_face(i, c.face(t)));
            if (!is_zero(m.reduce(v, s, r + 1)))
              rep.fail("relation closure", c.face(t),
                       "Gysin image at " + face_str(c.face(s)) + " of a degree-" + std::to_string(r) + " relation is nonzero");
          }
      }
    }

  // res/gys commutation across a square of faces
  for (int sg = 0; sg < nf; ++sg) {
    const Face& sf = c.face(sg);
    if (sf.size() < 3) continue;
    for (auto i : sf)
      for (auto j : sf) {
        if (i == j) continue;
        Face rho_f = boundary_face(i, sf);
        int rho = c.id(rho_f);
        int rho2 = c.id(boundary_face(j, rho_f));
        int djs = c.id(boundary_face(j, sf));
        for (int r = 0; r <= c.codim(rho); ++r) {
          if (r > c.codim(sg)) continue;
          rep.checked["res-gys commutation"]++;
          MatQ lhs = m.res_matrix(rho2, djs, r + 1) * m.gys_matrix(rho, rho2, r);
          MatQ rhs = m.gys_matrix(sg, djs, r) * m.res_matrix(rho, sg, r);
          if (!(lhs == rhs))
            rep.fail("res-gys commutation", sf,
                     "i=" + std::to_string(i) + " j=" + std::to_string(j) + " degree " + std::to_string(r));
        }
      }
  }

  // cup product: commutative and associative on basis classes
  for (int t = 0; t < nf; ++t) {
    int cd = c.codim(t);
    for (int r1 = 0; r1 <= cd; ++r1)
      for (int r2 = r1; r1 + r2 <= cd; ++r2)
        for (std::size_t a = 0; a < m.dim(t, r1); ++a)
          for (std::size_t b = 0; b < m.dim(t, r2); ++b) {
            rep.checked["cup commutativity"]++;
            GenVec x = m.basis_gen(t, r1, a), y = m.basis_gen(t, r2, b);
            if (m.reduce(m.cup(x, y, t), t, r1 + r2) != m.reduce(m.cup(y, x, t), t, r1 + r2))
              rep.fail("cup commutativity", c.face(t), "degrees " + std::to_string(r1) + "," + std::to_string(r2));
            for (int r3 = 1; r1 + r2 + r3 <= cd; ++r3)
              for (std::size_t e = 0; e < m.dim(t, r3); ++e) {
                rep.checked["cup associativity"]++;
                GenVec z = m.basis_gen(t, r3, e);
                GenVec lhs = m.cup(m.lift(m.reduce(m.cup(x, y, t), t, r1 + r2), t, r1 + r2), z, t);
                GenVec rhs = m.cup(x, m.lift(m.reduce(m.cup(y, z, t), t, r2 + r3), t, r2 + r3), t);
                if (m.reduce(lhs, t, r1 + r2 + r3) != m.reduce(rhs, t, r1 + r2 + r3))
                  rep.fail("cup associativity", c.face(t), "degrees " + std::to_string(r1) + "," +
                                                             std::to_string(r2) + "," + std::to_string(r3));
              }
          }
  }

  // assembled Gysin and restriction square to zero
  int n = m.n();
  for (int k = 1; k <= n + 1; ++k)
    for (int r = 0; r <= n; ++r) {
      if (k >= 3) {
        rep.checked["gamma squared"]++;
        if (!(m.gamma_matrix(k - 1, r + 1) * m.gamma_matrix(k, r)).is_zero())
          rep.fail("gamma squared", {}, "level " + std::to_string(k) + " degree " + std::to_string(r));
      }
      if (k + 2 <= n + 1) {
        rep.checked["rho squared"]++;
        if (!(m.rho_matrix(k + 1, r) * m.rho_matrix(k, r)).is_zero())
          rep.fail("rho squared", {}, "level " + std::to_string(k) + " degree " + std::to_string(r));
      }
    }
  return rep;
}

}  // namespace skeletal
