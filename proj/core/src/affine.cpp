#include "skeletal/affine.hpp"

#include <algorithm>
#include <stdexcept>

namespace skeletal {

namespace {

Q det2(const Vec2& a, const Vec2& b) { return a[0] * b[1] - a[1] * b[0]; }

Q abs_q(const Q& x) { return sgn(x) < 0 ? Q(-x) : x; }

void require_valid(const AffineSurfaceDatum& s) {
  DatumReport rep = validate_surface(s);
  if (!rep.ok) {
    const auto& f = rep.failures.front();
    throw DatumError(f.check + " violated at " + face_str(f.face) + ": " + f.detail, f.face);
  }
}

}  // namespace

std::vector<AffineChart> charts(const AffineSurfaceDatum& s) {
  require_valid(s);
  const Complex& c = s.complex;
  std::vector<AffineChart> out;
  for (int e : c.of_size(2)) {
    const Face& f = c.face(e);
    AffineChart ch;
    ch.o = f[0];
    ch.j = f[1];
    EdgeApexes ap = edge_apexes(c, ch.o, ch.j);
    ch.i = ap.i;
    ch.k = ap.k;
    ch.d = s.get_d(ch.o, ch.j);
    Q no = s.multiplicity.at(ch.o), nj = s.multiplicity.at(ch.j), ni = s.multiplicity.at(ch.i),
      nk = s.multiplicity.at(ch.k);
    Vec2 uj{Q(1), Q(0)}, ui{Q(0), Q(1) / no};
    Vec2 uk{Q(ch.d) * uj[0] - ui[0], Q(ch.d) * uj[1] - ui[1]};
    for (int a = 0; a < 2; ++a) {
      ch.g_j[a] = uj[a] / nj;
      ch.g_i[a] = ui[a] / ni;
      ch.g_k[a] = uk[a] / nk;
    }
    ch.volume_i = abs_q(det2(ch.g_j, ch.g_i));
    ch.volume_k = abs_q(det2(ch.g_j, ch.g_k));
    ch.n_sigma = no * nj * ni;
    ch.n_eta = no * nj * nk;
    out.push_back(ch);
  }
  return out;
}

bool chart_ok(const AffineSurfaceDatum& s, const AffineChart& c) {
  Q ni = s.multiplicity.at(c.i), nj = s.multiplicity.at(c.j), nk = s.multiplicity.at(c.k);
  for (int a = 0; a < 2; ++a)
    if (ni * c.g_i[a] + nk * c.g_k[a] != Q(c.d) * nj * c.g_j[a]) return false;
  return c.volume_i == 1 / c.n_sigma && c.volume_k == 1 / c.n_eta;
}

MatQ vertex_monodromy(const AffineSurfaceDatum& s, Vertex o) {
  const Complex& c = s.complex;
  if (c.id(Face{o}) < 0) throw DatumError("not a vertex: " + std::to_string(o), {o});
  for (int e : c.covering(c.id(Face{o})))
    if (c.covering(e).size() != 2)
      throw DatumError("vertex " + std::to_string(o) + " lies on the boundary", {o});
  std::vector<Vertex> link = link_cycle(c, o);
  MatQ m = MatQ::identity(2);
  for (auto v : link) {
    MatQ step(2, 2);
    step(0, 1) = -1;
    step(1, 0) = 1;
    step(1, 1) = s.get_d(o, v);
    m = step * m;
  }
  return m;
}

std::vector<Vertex> singular_vertices(const AffineSurfaceDatum& s) {
  std::vector<Vertex> out;
  for (auto v : s.complex.vertices())
    if (!(vertex_monodromy(s, v) == MatQ::identity(2))) out.push_back(v);
  return out;
}

Subspace affine_sections(const AffineSurfaceDatum& s, const Face& sigma) {
  const Complex& c = s.complex;
  int sid = c.id(sigma);
  if (sid < 0) throw std::invalid_argument("affine_sections: not a face");
  const auto& verts = c.star_vertices(sid);
  auto col = [&](Vertex v) { return static_cast<std::size_t>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin()); };
  std::vector<VecQ> rows;
  for (int e : c.of_size(2)) {
    const Face& f = c.face(e);
    const auto& tris = c.covering(e);
    if (tris.size() != 2) continue;
    bool inside = true;
    for (int t : tris)
      if (!face_contains(c.face(t), sigma)) inside = false;
    if (!inside) continue;
    Vertex o = f[0], j = f[1];
    EdgeApexes ap = edge_apexes(c, o, j);
    // N_i f_i + N_k f_k = d_oj N_j f_j + d_jo N_o f_o
    VecQ r(verts.size());
    r[col(ap.i)] += s.multiplicity.at(ap.i);
    r[col(ap.k)] += s.multiplicity.at(ap.k);
    r[col(j)] -= Q(s.get_d(o, j) * s.multiplicity.at(j));
    r[col(o)] -= Q(s.get_d(j, o) * s.multiplicity.at(o));
    rows.push_back(r);
  }
  if (rows.empty()) return Subspace::whole(verts.size());
  return rank_kernel(MatQ::from_rows(rows, verts.size())).kernel;
}

Lambda1Comparison compare_lambda1(const LambdaSheaf& sheaf, const AffineSurfaceDatum& s) {
  Lambda1Comparison rep;
  const Complex& c = sheaf.complex();
  auto fail = [&](const Face& f, const std::string& why) {
    rep.ok = false;
    rep.failures.emplace_back(f, why);
  };
  for (std::size_t f = 0; f < c.size(); ++f) {
    int fi = static_cast<int>(f);
    const Face& sigma = c.face(fi);
    ++rep.faces_checked;
    Subspace aff = affine_sections(s, sigma);
    const Subspace& a1 = sheaf.a_space(fi, 1);
    if (aff.ambient() != a1.ambient()) {
      fail(sigma, "star vertex sets differ");
      continue;
    }
    if (sheaf.lambda_space(fi, 1).dim() + 1 != aff.dim())
      fail(sigma, "dim Λ^1 = " + std::to_string(sheaf.lambda_space(fi, 1).dim()) + " but affine sections mod constants = " +
                      std::to_string(aff.dim() - 1));
    else if (!(aff == a1))
      fail(sigma, "subspaces of vertex-value functions differ");
  }
  return rep;
}

AffineSurfaceDatum blowup(const AffineSurfaceDatum& s, const Face& center) {
  require_valid(s);
  const Complex& c = s.complex;
  if (c.id(center) < 0) throw std::invalid_argument("blowup: center " + face_str(center) + " is not a face");
  Vertex e = c.vertices().back() + 1;
  std::vector<Face> tris;
  AffineSurfaceDatum out;
  out.multiplicity = s.multiplicity;
  out.d = s.d;
  if (center.size() == 2) {
    Vertex o = center[0], j = center[1];
    EdgeApexes ap = edge_apexes(c, o, j);
    for (const auto& t : c.maximal_faces()) {
      if (!face_contains(t, center)) {
        tris.push_back(t);
        continue;
      }
      Vertex x = face_has(t, ap.i) ? ap.i : ap.k;
      Face a{o, e, x}, b{j, e, x};
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      tris.push_back(a);
      tris.push_back(b);
    }
    out.multiplicity[e] = s.multiplicity.at(o) + s.multiplicity.at(j);
    long doj = s.get_d(o, j), djo = s.get_d(j, o);
    out.d.erase({o, j});
    out.d.erase({j, o});
    out.d[{o, e}] = doj;
    out.d[{j, e}] = djo;
    out.d[{e, o}] = djo - doj;
    out.d[{e, j}] = doj - djo;
    for (Vertex x : {ap.i, ap.k}) {
      out.d[{e, x}] = 0;
      out.d[{x, e}] = 1;
      out.d[{x, o}] += 1;
      out.d[{x, j}] += 1;
    }
  } else if (center.size() == 3) {
    for (const auto& t : c.maximal_faces())
      if (t != center) tris.push_back(t);
    for (std::size_t a = 0; a < 3; ++a) {
      Face t{center[a], center[(a + 1) % 3], e};
      std::sort(t.begin(), t.end());
      tris.push_back(t);
    }
    long ne = 0;
    for (auto v : center) {
      ne += s.multiplicity.at(v);
      out.d[{e, v}] = -1;
      out.d[{v, e}] = 1;
      for (auto w : center)
        if (w != v) out.d[{v, w}] += 1;
    }
    out.multiplicity[e] = ne;
  } else {
    throw std::invalid_argument("blowup: center must be an edge or a triangle");
  }
  out.complex = Complex::from_maximal(tris);
  DatumReport rep = validate_surface(out);
  if (!rep.ok)
    throw std::logic_error("blowup output fails " + rep.failures.front().check + " at " +
                           face_str(rep.failures.front().face) + ": " + rep.failures.front().detail);
  return out;
}

}  // namespace skeletal
