#include <algorithm>
#include <set>

#include "../oracle.hpp"
#include "doctest.h"
#include "skeletal/affine.hpp"
#include "skeletal/steenbrink.hpp"

using namespace skeletal;

namespace {

std::set<Vertex> star_set(const Complex& c, const Face& f) {
  auto v = c.star_vertices(c.id(f));
  return {v.begin(), v.end()};
}

bool disjoint(const std::set<Vertex>& a, const std::set<Vertex>& b) {
  for (auto x : a)
    if (b.count(x)) return false;
  return true;
}

std::vector<Face> centers(const AffineSurfaceDatum& s) {
  std::vector<Face> out;
  const auto& e = s.complex.of_size(2);
  const auto& t = s.complex.of_size(3);
  for (std::size_t i = 0; i < 3 && i < e.size(); ++i) out.push_back(s.complex.face(e[i * (e.size() / 3)]));
  for (std::size_t i = 0; i < 3 && i < t.size(); ++i) out.push_back(s.complex.face(t[i * (t.size() / 3)]));
  return out;
}

}  // namespace

TEST_CASE("charts satisfy the anchor relation and the volume normalisation") {
  for (auto s : {tetrahedron_surface(), icosahedron_surface(), mumford_torus_surface(3),
                 blowup(tetrahedron_surface(), {0, 1}), blowup(blowup(tetrahedron_surface(), {0, 1}), {0, 2, 4})}) {
    auto cs = charts(s);
    CHECK(cs.size() == s.complex.of_size(2).size());
    for (const auto& c : cs) {
      CHECK(chart_ok(s, c));
      CHECK(c.o < c.j);
      CHECK(c.volume_i * c.n_sigma == 1);
      CHECK(c.volume_k * c.n_eta == 1);
      CHECK(c.d == s.get_d(c.o, c.j));
    }
  }
}

TEST_CASE("vertex monodromy") {
  auto t = tetrahedron_surface();
  MatQ minus = Q(-1) * MatQ::identity(2);
  for (auto v : t.complex.vertices()) CHECK(vertex_monodromy(t, v) == minus);
  CHECK(singular_vertices(t).size() == 4);
  auto mu = mumford_torus_surface(3);
  for (auto v : mu.complex.vertices()) CHECK(vertex_monodromy(mu, v) == MatQ::identity(2));
  CHECK(singular_vertices(mu).empty());
  auto ic = icosahedron_surface();
  CHECK(singular_vertices(ic).size() == 12);
  for (auto v : ic.complex.vertices()) {
    MatQ m = vertex_monodromy(ic, v);
    CHECK(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) == 1);  // SL_2
  }
  CHECK_THROWS_AS(vertex_monodromy(t, 17), DatumError);
  // a non-vertex after blowing up is still rejected, the new vertex is regular
  auto b = blowup(mu, {0, 1});
  Vertex e = b.complex.vertices().back();
  CHECK(vertex_monodromy(b, e) == MatQ::identity(2));
}

TEST_CASE("affine sections contain the constants and match Lambda^1") {
  for (auto s : {tetrahedron_surface(), icosahedron_surface(), mumford_torus_surface(3)}) {
    StrataModel m(build_kulikov_surface(s));
    LambdaSheaf l(m);
    const Complex& c = s.complex;
    for (const auto& f : c.faces()) {
      Subspace a = affine_sections(s, f);
      CHECK(a.contains(VecQ(c.star_vertices(c.id(f)).size(), Q(1))));
      CHECK(a.dim() == l.lambda_space(l.complex().id(f), 1).dim() + 1);
    }
    auto r = compare_lambda1(l, s);
    CHECK(r.ok);
    CHECK(r.failures.empty());
    CHECK(r.faces_checked == c.size());
  }
  auto t = tetrahedron_surface();
  CHECK(affine_sections(t, {0}).dim() == 1);
  CHECK(affine_sections(t, {0, 1, 2}).dim() == 3);
  auto mu = mumford_torus_surface(3);
  CHECK(affine_sections(mu, {0}).dim() == 3);
}

TEST_CASE("edge blow-up bookkeeping") {
  auto t = tetrahedron_surface();
  auto b = blowup(t, {0, 1});
  Vertex e = 4;
  CHECK(b.complex.vertices().back() == e);
  CHECK(b.multiplicity.at(e) == 2);
  CHECK_FALSE(b.complex.is_face({0, 1}));
  CHECK(b.get_d(0, e) == t.get_d(0, 1));
  CHECK(b.get_d(1, e) == t.get_d(1, 0));
  CHECK(b.get_d(e, 0) == t.get_d(1, 0) - t.get_d(0, 1));
  for (Vertex x : {2, 3}) {
    CHECK(b.get_d(e, x) == 0);
    CHECK(b.get_d(x, e) == 1);
    CHECK(b.get_d(x, 0) == t.get_d(x, 0) + 1);
  }
  CHECK(validate_surface(b).ok);
  CHECK_THROWS(blowup(t, {0}));
  CHECK_THROWS(blowup(t, {0, 5}));
}

TEST_CASE("blow-ups leave the Lambda table, the rows and the comparison unchanged") {
  for (auto s : {tetrahedron_surface(), icosahedron_surface(), mumford_torus_surface(3)}) {
    StrataModel m0(build_kulikov_surface(s));
    LambdaSheaf l0(m0);
    auto base = theorem_a_check(l0);
    auto cs = centers(s);
    REQUIRE(cs.size() == 6);
    for (const auto& center : cs) {
      auto b = blowup(s, center);
      CHECK(validate_surface(b).ok);
      StrataModel m(build_kulikov_surface(b));
      LambdaSheaf l(m);
      auto rep = theorem_a_check(l);
      CHECK(rep.ok);
      CHECK(rep.lambda == base.lambda);
      CHECK(rep.rows == base.rows);
      CHECK(compare_lambda1(l, b).ok);
      // the old vertices keep their monodromy conjugacy class (trace)
      for (auto v : s.complex.vertices()) {
        MatQ a = vertex_monodromy(s, v), c = vertex_monodromy(b, v);
        CHECK(a(0, 0) + a(1, 1) == c(0, 0) + c(1, 1));
      }
      // sections far from the center do not notice it
      auto near = star_set(s.complex, center);
      for (const auto& f : s.complex.faces()) {
        auto st = star_set(s.complex, f);
        std::set<Vertex> grown;
        for (auto v : st) {
          auto sv = star_set(s.complex, {v});
          grown.insert(sv.begin(), sv.end());
        }
        if (!disjoint(grown, near)) continue;
        CHECK(affine_sections(b, f) == affine_sections(s, f));
      }
    }
  }
}
