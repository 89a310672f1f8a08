#include "../oracle.hpp"
#include "doctest.h"
#include "skeletal/affine.hpp"
#include "skeletal/strata.hpp"

using namespace skeletal;

namespace {

StrataModel tetra_model() { return StrataModel(build_kulikov_surface(tetrahedron_surface())); }

Q pt_degree(const StrataModel& m, const FormalClass& a) { return m.degree(a); }

}  // namespace

TEST_CASE("dimensions of 'H on the tetrahedron agree with Gram ranks") {
  StrataModel m = tetra_model();
  // a double curve is a P^1 with two triple points: all pairings equal 1
  oracle::Dense edge_gram{{1, 1}, {1, 1}};
  CHECK(m.dim(Face{0, 1}, 1) == oracle::rank(edge_gram));
  // three double curves of self-intersection -1 meeting pairwise once
  oracle::Dense vertex_gram{{-1, 1, 1}, {1, -1, 1}, {1, 1, -1}};
  CHECK(m.dim(Face{0}, 1) == oracle::rank(vertex_gram));
  for (const auto& f : m.complex().faces()) CHECK(m.dim(f, 0) == 1);
  CHECK(m.dim(Face{0}, 2) == 1);
  CHECK(m.dim(Face{0, 1, 2}, 0) == 1);
}

TEST_CASE("restriction rules") {
  StrataModel m = tetra_model();
  CHECK(m.coords(m.res(m.unit({0}), {0, 1})) == m.coords(m.unit({0, 1})));
  CHECK(m.coords(m.res(m.unit({0}), {0, 1, 2})) == m.coords(m.unit({0, 1, 2})));
  // self-intersection case: -d_01 times the point class
  FormalClass self = m.res(m.generator({0}, {0, 1}), {0, 1});
  CHECK(pt_degree(m, self) == -1);
  // transverse case
  FormalClass tr = m.res(m.generator({0}, {0, 1}), {0, 2});
  CHECK(m.coords(tr) == m.coords(m.generator({0, 2}, {0, 1, 2})));
  CHECK_THROWS(m.res(m.unit({0}), {1, 2}));
}

TEST_CASE("Gysin rules") {
  StrataModel m = tetra_model();
  CHECK(m.coords(m.gys(m.unit({0, 1}), {0})) == m.coords(m.generator({0}, {0, 1})));
  FormalClass p2 = m.gys(m.generator({0, 1}, {0, 1, 2}), {0});
  FormalClass p3 = m.gys(m.generator({0, 1}, {0, 1, 3}), {0});
  CHECK(m.coords(p2) == m.coords(p3));
  CHECK(m.coords(p2) == m.coords(m.generator({0}, {0, 1, 2})));
  // functoriality
  FormalClass x = m.unit({0, 1, 2});
  CHECK(m.coords(m.gys(m.gys(x, {0, 1}), {0})) == m.coords(m.gys(x, {0})));
  CHECK_THROWS(m.gys(m.unit({0}), {0, 1}));
}

TEST_CASE("cup products on a vertex of the tetrahedron") {
  StrataModel m = tetra_model();
  FormalClass a = m.generator({0}, {0, 1}), b = m.generator({0}, {0, 2});
  CHECK(m.degree(m.cup(a, b)) == 1);
  CHECK(m.degree(m.cup(a, a)) == -1);
  CHECK(m.coords(m.cup(m.unit({0}), a)) == m.coords(a));
  CHECK_THROWS(m.cup(a, m.unit({1})));
}

TEST_CASE("pairing mode gives a nondegenerate pairing") {
  for (auto s : {tetrahedron_surface(), icosahedron_surface(), mumford_torus_surface(3)}) {
    StrataModel m(build_kulikov_surface(s));
    const Complex& c = m.complex();
    for (std::size_t t = 0; t < c.size(); ++t) {
      int ti = static_cast<int>(t), cd = c.codim(ti);
      for (int r = 0; r <= cd; ++r) {
        REQUIRE(m.dim(ti, r) == m.dim(ti, cd - r));
        oracle::Dense g(m.dim(ti, r), std::vector<mpq_class>(m.dim(ti, cd - r)));
        for (std::size_t a = 0; a < m.dim(ti, r); ++a)
          for (std::size_t b = 0; b < m.dim(ti, cd - r); ++b)
            g[a][b] = StrataModel::degree(
                m.lift(m.reduce(m.cup(m.basis_gen(ti, r, a), m.basis_gen(ti, cd - r, b), ti), ti, cd), ti, cd));
        CHECK(oracle::rank(g) == m.dim(ti, r));
      }
    }
  }
}

TEST_CASE("iterated restriction does not depend on the vertex order") {
  for (auto s : {tetrahedron_surface(), mumford_torus_surface(3)}) {
    StrataModel m(build_kulikov_surface(s));
    const Complex& c = m.complex();
    for (int t : c.of_size(1))
      for (int u : c.cofaces(t)) {
        if (c.face(u).size() != 3) continue;
        std::vector<Vertex> extra;
        for (auto v : c.face(u))
          if (!face_has(c.face(t), v)) extra.push_back(v);
        std::vector<Vertex> rev(extra.rbegin(), extra.rend());
        for (int r = 0; r <= 0; ++r)  // only degree 0 survives on a triple point
          for (std::size_t h = 0; h < m.dim(t, r); ++h) {
            GenVec y = m.basis_gen(t, r, h);
            CHECK(m.reduce(m.res_to_ordered(y, t, extra), u, r) == m.reduce(m.res_to_ordered(y, t, rev), u, r));
          }
        // degree 1 classes restricted to edges along either vertex of the edge pair
      }
    for (int t : c.of_size(1))
      for (int e : c.covering(t))
        for (std::size_t h = 0; h < m.dim(t, 1); ++h) {
          GenVec y = m.basis_gen(t, 1, h);
          Vertex j = 0;
          for (auto v : c.face(e))
            if (!face_has(c.face(t), v)) j = v;
          CHECK(m.reduce(m.res_to(y, t, e), e, 1) == m.reduce(m.res(y, t, j), e, 1));
        }
  }
}

TEST_CASE("Gysin and restriction square to zero and commute") {
  for (auto d : {build_kulikov_surface(tetrahedron_surface()), build_mumford_torus(3),
                 build_curve(cycle_graph(4), unit_multiplicities(cycle_graph(4)))}) {
    StrataModel m(d);
    int n = m.n();
    for (int k = 1; k <= n + 1; ++k)
      for (int r = 0; r <= n; ++r) {
        if (k >= 3) CHECK((m.gamma_matrix(k - 1, r + 1) * m.gamma_matrix(k, r)).is_zero());
        if (k >= 3) CHECK((m.gamma_matrix(k - 1, r + 1, true) * m.gamma_matrix(k, r, true)).is_zero());
        if (k + 2 <= n + 1) CHECK((m.rho_matrix(k + 1, r) * m.rho_matrix(k, r)).is_zero());
      }
    const Complex& c = m.complex();
    for (int sg : c.of_size(3))
      for (auto i : c.face(sg))
        for (auto j : c.face(sg)) {
          if (i == j) continue;
          int rho = c.id(boundary_face(i, c.face(sg)));
          int rho2 = c.id(boundary_face(j, c.face(rho)));
          int djs = c.id(boundary_face(j, c.face(sg)));
          MatQ lhs = m.res_matrix(rho2, djs, 1) * m.gys_matrix(rho, rho2, 0);
          MatQ rhs = m.gys_matrix(sg, djs, 0) * m.res_matrix(rho, sg, 0);
          CHECK(lhs == rhs);
        }
  }
}

TEST_CASE("cycle graph: restriction is the signed incidence matrix and Gysin has rank m-1") {
  for (int mm = 3; mm <= 6; ++mm) {
    Complex g = cycle_graph(mm);
    StrataModel m(build_curve(g, unit_multiplicities(g)));
    MatQ rho = m.rho_matrix(1, 0);
    const auto& edges = g.of_size(2);
    const auto& verts = g.of_size(1);
    MatQ inc(edges.size(), verts.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const Face& f = g.face(edges[e]);
      for (std::size_t v = 0; v < verts.size(); ++v) {
        Vertex x = g.face(verts[v])[0];
        if (x == f[0]) inc(e, v) = -1;
        if (x == f[1]) inc(e, v) = 1;
      }
    }
    CHECK(rho == inc);
    CHECK(oracle::rank(m.gamma_matrix(2, 0)) == static_cast<std::size_t>(mm - 1));
  }
}

TEST_CASE("validators") {
  CHECK(validate_datum(tetra_model()).ok);
  auto bad = tetrahedron_surface();
  bad.d[{0, 1}] = 2;
  DatumReport r = validate_surface(bad);
  REQUIRE_FALSE(r.ok);
  CHECK(r.failures.front().check == "selfints");
  CHECK(r.failures.front().face == Face{0, 1});
  CHECK_THROWS_AS(build_kulikov_surface(bad), DatumError);
  CHECK(validate_datum(StrataModel(build_curve(cycle_graph(3), unit_multiplicities(cycle_graph(3))))).ok);
  CHECK(validate_datum(StrataModel(build_curve(path_graph(4), unit_multiplicities(path_graph(4))))).ok);
  Complex pt = Complex::from_maximal({{0}});
  StrataModel mp(build_curve(pt, unit_multiplicities(pt)));
  CHECK(validate_datum(mp).ok);
  CHECK(mp.dim(Face{0}, 0) == 1);
}

TEST_CASE("surface builders") {
  CHECK(validate_datum(StrataModel(build_kulikov_surface(icosahedron_surface()))).ok);
  CHECK(validate_datum(StrataModel(build_mumford_torus(3))).ok);
  CHECK_THROWS_AS(build_mumford_torus(2), DatumError);
  auto mu = mumford_torus_surface(3);
  for (const auto& [flag, d] : mu.d) CHECK(d == 1);
  auto blown = blowup(tetrahedron_surface(), {0, 1, 2});
  CHECK(blown.complex.vertices().size() == 5);
  CHECK(blown.multiplicity.at(4) == 3);
  CHECK(validate_datum(StrataModel(build_kulikov_surface(blown))).ok);
}

TEST_CASE("principal divisor identity holds on blown-up data with N != 1") {
  auto s = blowup(blowup(tetrahedron_surface(), {0, 1}), {0, 2, 4});
  StrataModel m(build_kulikov_surface(s));
  DatumReport r = validate_datum(m);
  CHECK(r.ok);
  CHECK(r.checked.at("principal divisor identity") == m.complex().size() - m.complex().of_size(3).size());
}
