#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "skeletal/complex.hpp"
#include "skeletal/strata.hpp"

using namespace skeletal;

namespace {

Complex boundary_tetra() { return Complex::from_maximal({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}); }

Face random_face(std::mt19937_64& rng, std::size_t max_size) {
  std::set<Vertex> s;
  std::size_t k = 1 + rng() % max_size;
  while (s.size() < k) s.insert(static_cast<Vertex>(rng() % 12));
  return Face(s.begin(), s.end());
}

Face minus(const Face& a, const Face& b) {
  Face out;
  for (auto v : a)
    if (!face_has(b, v)) out.push_back(v);
  return out;
}

int prod_sign(const Face& over, const Face& in, int parity) {
  int s = 1;
  for (auto j : over) s *= sgn(j, in) * ((parity % 2) ? -1 : 1);
  return s;
}

}  // namespace

TEST_CASE("sgn follows the position of the vertex") {
  CHECK(sgn(3, {3, 5, 9}) == 1);
  CHECK(sgn(5, {3, 5, 9}) == -1);
  CHECK(sgn(9, {3, 5, 9}) == 1);
  CHECK_THROWS(sgn(4, {3, 5, 9}));
}

TEST_CASE("boundary faces") {
  CHECK(boundary_face(1, {1, 2, 3}) == Face{2, 3});
  CHECK(boundary_face(3, {1, 2, 3}) == Face{1, 2});
  CHECK_THROWS(boundary_face(2, {2}));
  CHECK_THROWS(boundary_face(4, {1, 2}));
}

TEST_CASE("boundary operators commute") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    Face s = random_face(rng, 6);
    if (s.size() < 3) continue;
    for (auto i : s)
      for (auto j : s)
        if (i != j) CHECK(boundary_face(i, boundary_face(j, s)) == boundary_face(j, boundary_face(i, s)));
  }
}

TEST_CASE("parity identities on random sets") {
  std::mt19937_64 rng(2);
  int tested = 0;
  for (int t = 0; t < 2000; ++t) {
    Face j = random_face(rng, 7);
    if (j.size() < 2) continue;
    Vertex i = j[rng() % j.size()];
    Face jp;
    for (auto v : j)
      if (v != i && rng() % 2) jp.push_back(v);
    Face jpp = face_with(jp, i);
    Face ji = boundary_face(i, j);
    int n = static_cast<int>(j.size());
    // first identity
    CHECK(sgn(i, jpp) * sgn(i, minus(j, jp)) == sgn(i, j));
    // second identity
    int lhs2 = prod_sign(jp, j, n) * prod_sign(jp, ji, n - 1);  // quotient of ±1 products
    CHECK(lhs2 == sgn(i, jpp));
    // third identity carries an extra (-1)^{|J|}
    int lhs3 = prod_sign(jp, ji, n - 1) * prod_sign(jpp, j, n);
    CHECK(lhs3 == ((n % 2) ? -1 : 1) * sgn(i, minus(j, jp)));
    ++tested;
  }
  CHECK(tested > 500);
}

TEST_CASE("closed and open stars") {
  Complex t = boundary_tetra();
  Complex st = t.closed_star({0, 1});
  CHECK(st.vertices() == std::vector<Vertex>{0, 1, 2, 3});
  CHECK(st.maximal_faces().size() == 2);
  CHECK(st.is_face({0, 1, 2}));
  CHECK(st.is_face({0, 1, 3}));
  CHECK_FALSE(st.is_face({0, 2, 3}));
  CHECK(t.open_star_faces({0, 1, 2}) == std::vector<Face>{{0, 1, 2}});

  Complex cyc = cycle_graph(5);
  Complex sv = cyc.closed_star({2});
  CHECK(sv.vertices() == std::vector<Vertex>{1, 2, 3});
  CHECK(sv.of_size(2).size() == 2);
}

TEST_CASE("open star of a face is the intersection of the vertex open stars") {
  for (const Complex& c : {boundary_tetra(), cycle_graph(4), mumford_torus_surface(3).complex}) {
    for (const auto& s : c.faces()) {
      std::set<Face> inter;
      bool first = true;
      for (auto v : s) {
        auto st = c.open_star_faces({v});
        std::set<Face> cur(st.begin(), st.end());
        if (first) {
          inter = cur;
          first = false;
        } else {
          std::set<Face> keep;
          for (const auto& f : inter)
            if (cur.count(f)) keep.insert(f);
          inter = keep;
        }
      }
      auto os = c.open_star_faces(s);
      CHECK(std::set<Face>(os.begin(), os.end()) == inter);
    }
  }
}

TEST_CASE("validate_simplicial") {
  Complex t = boundary_tetra();
  CHECK(validate_simplicial(t.faces(), 2).ok);
  std::vector<Face> missing = t.faces();
  missing.erase(std::find(missing.begin(), missing.end(), Face{0, 1}));
  auto r = validate_simplicial(missing, 2);
  REQUIRE_FALSE(r.ok);
  CHECK(r.violations.front().kind == "not closed under subsets");
  auto big = validate_simplicial({{0, 1, 2, 3}}, 2);
  REQUIRE_FALSE(big.ok);
  CHECK(big.violations.front().kind == "dimension bound");
  auto unsorted = validate_simplicial({{1, 0}}, 1);
  CHECK_FALSE(unsorted.ok);
}

TEST_CASE("face bookkeeping of the boundary of a tetrahedron") {
  Complex t = boundary_tetra();
  CHECK(t.dimension() == 2);
  CHECK(t.size() == 14);
  CHECK(t.of_size(1).size() == 4);
  CHECK(t.of_size(2).size() == 6);
  CHECK(t.of_size(3).size() == 4);
  int v0 = t.id({0});
  CHECK(t.cofaces(v0).size() == 7);
  CHECK(t.covering(v0).size() == 3);
  CHECK(t.star_vertices(t.id({0, 1})) == std::vector<Vertex>{0, 1, 2, 3});
  CHECK(t.codim(v0) == 2);
  CHECK(t.id({5}) == -1);
  CHECK(link_cycle(t, 0) == std::vector<Vertex>{1, 2, 3});
}

TEST_CASE("Mumford torus triangulation counts") {
  auto s = mumford_torus_surface(3);
  CHECK(s.complex.of_size(1).size() == 9);
  CHECK(s.complex.of_size(2).size() == 27);
  CHECK(s.complex.of_size(3).size() == 18);
  for (auto v : s.complex.vertices()) CHECK(link_cycle(s.complex, v).size() == 6);
}
