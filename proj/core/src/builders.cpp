#include <algorithm>
#include <set>

#include "skeletal/strata.hpp"

namespace skeletal {

EdgeApexes edge_apexes(const Complex& c, Vertex o, Vertex j) {
  Face e{std::min(o, j), std::max(o, j)};
  int eid = c.id(e);
  if (eid < 0) throw DatumError("not an edge: " + face_str(e), e);
  std::vector<Vertex> ap;
  for (int t : c.covering(eid))
    for (auto v : c.face(t))
      if (v != o && v != j) ap.push_back(v);
  if (ap.size() != 2) throw DatumError("edge " + face_str(e) + " does not lie in exactly two triangles", e);
  std::sort(ap.begin(), ap.end());
  return {ap[0], ap[1]};
}

std::vector<Vertex> link_cycle(const Complex& c, Vertex o) {
  std::map<Vertex, std::vector<Vertex>> adj;
  for (const auto& e : c.link_vertices_cycle(o)) {
    adj[e[0]].push_back(e[1]);
    adj[e[1]].push_back(e[0]);
  }
  if (adj.empty()) throw DatumError("vertex " + std::to_string(o) + " has an empty link", {o});
  for (auto& [v, nb] : adj) {
    if (nb.size() != 2) throw DatumError("link of vertex " + std::to_string(o) + " is not a cycle", {o});
    std::sort(nb.begin(), nb.end());
  }
  std::vector<Vertex> cyc{adj.begin()->first};
  Vertex prev = cyc[0], cur = adj[cyc[0]][0];
  while (cur != cyc[0]) {
    cyc.push_back(cur);
    const auto& nb = adj[cur];
    Vertex nxt = nb[0] == prev ? nb[1] : nb[0];
    prev = cur;
    cur = nxt;
  }
  if (cyc.size() != adj.size()) throw DatumError("link of vertex " + std::to_string(o) + " is not connected", {o});
  return cyc;
}

DatumReport validate_surface(const AffineSurfaceDatum& s) {
  DatumReport rep;
  const Complex& c = s.complex;
  if (c.dimension() != 2) {
    rep.fail("dimension", {}, "surface data needs a 2-dimensional complex");
    return rep;
  }
  for (const auto& f : c.maximal_faces())
    if (f.size() != 3) {
      rep.fail("pure", f, "maximal face is not a triangle");
      return rep;
    }
  bool mult_ok = true;
  for (auto v : c.vertices()) {
    auto it = s.multiplicity.find(v);
    if (it == s.multiplicity.end() || it->second <= 0) {
      rep.fail("multiplicity", {v}, "missing or nonpositive");
      mult_ok = false;
    }
  }
  for (auto v : c.vertices()) {
    rep.checked["link cycle"]++;
    try {
      link_cycle(c, v);
    } catch (const DatumError& e) {
      rep.fail("link cycle", {v}, e.what());
    }
  }
  for (int e : c.of_size(2)) {
    const Face& f = c.face(e);
    rep.checked["selfints"]++;
    if (c.covering(e).size() != 2) {
      rep.fail("edge", f, "edge does not lie in exactly two triangles");
      continue;
    }
    Vertex o = f[0], j = f[1];
    auto doj = s.d.find({o, j}), djo = s.d.find({j, o});
    if (doj == s.d.end() || djo == s.d.end()) {
      rep.fail("d-value", f, "missing d-value on a flag of this edge");
      continue;
    }
    if (!mult_ok) continue;
    EdgeApexes ap = edge_apexes(c, o, j);
    long lhs = s.multiplicity.at(o) * djo->second + s.multiplicity.at(j) * doj->second;
    long rhs = s.multiplicity.at(ap.i) + s.multiplicity.at(ap.k);
    if (lhs != rhs)
      rep.fail("selfints", f,
               "N_o d_jo + N_j d_oj = " + std::to_string(lhs) + " but N_i + N_k = " + std::to_string(rhs));
  }
  return rep;
}

namespace {

VecQ unit_vec(std::size_t n, std::size_t k, const Q& v) {
  VecQ out(n);
  out[k] = v;
  return out;
}

void vertex_self_classes(DegenerationDatum& d) {
  const Complex& c = d.complex;
  for (auto o : c.vertices()) {
    Face of{o};
    auto gens = generators(c, of, 1);
    VecQ x(gens.size());
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Vertex j = gens[k][0] == o ? gens[k][1] : gens[k][0];
      x[k] = Q(-d.multiplicity.at(j), d.multiplicity.at(o));
      x[k].canonicalize();
    }
    if (c.codim(c.id(of)) >= 1) d.self_classes[{of, o}] = x;
  }
}

std::vector<VecQ> identify_all(std::size_t n) {
  std::vector<VecQ> rows;
  for (std::size_t k = 1; k < n; ++k) {
    VecQ v(n);
    v[0] = 1;
    v[k] = -1;
    rows.push_back(v);
  }
  return rows;
}

}  // namespace

DegenerationDatum build_kulikov_surface(const AffineSurfaceDatum& s, RelationMode mode,
                                        const std::map<std::pair<Face, int>, std::vector<VecQ>>& extra) {
  DatumReport rep = validate_surface(s);
  if (!rep.ok) {
    const auto& f = rep.failures.front();
    throw DatumError(f.check + " violated at " + face_str(f.face) + ": " + f.detail, f.face);
  }
  DegenerationDatum d;
  d.complex = s.complex;
  d.multiplicity = s.multiplicity;
  d.mode = mode;
  const Complex& c = d.complex;
  vertex_self_classes(d);
  for (int e : c.of_size(2)) {
    const Face& f = c.face(e);
    Vertex a = f[0], b = f[1];
    auto gens = generators(c, f, 1);
    d.self_classes[{f, b}] = unit_vec(gens.size(), 0, Q(-s.get_d(a, b)));
    d.self_classes[{f, a}] = unit_vec(gens.size(), 0, Q(-s.get_d(b, a)));
  }
  if (mode == RelationMode::explicit_relations) {
    for (int e : c.of_size(2)) d.relations[{c.face(e), 1}] = identify_all(2);
    for (auto o : c.vertices()) {
      Face of{o};
      d.relations[{of, 2}] = identify_all(generators(c, of, 2).size());
    }
    for (const auto& [key, rows] : extra)
      for (const auto& r : rows) d.relations[key].push_back(r);
  }
  return d;
}

DegenerationDatum build_curve(const Complex& graph, const std::map<Vertex, long>& multiplicity) {
  if (graph.dimension() > 1) throw DatumError("curve data needs a graph (dimension at most 1)");
  DegenerationDatum d;
  d.complex = graph;
  d.multiplicity = multiplicity;
  d.mode = RelationMode::explicit_relations;
  for (auto v : graph.vertices())
    if (!multiplicity.count(v)) throw DatumError("missing multiplicity for vertex " + std::to_string(v), {v});
  vertex_self_classes(d);
  for (auto o : graph.vertices()) {
    Face of{o};
    if (graph.codim(graph.id(of)) < 1) continue;
    auto gens = generators(graph, of, 1);
    if (gens.size() > 1) d.relations[{of, 1}] = identify_all(gens.size());
  }
  return d;
}

AffineSurfaceDatum mumford_torus_surface(int k) {
  if (k < 3) throw DatumError("Mumford torus needs k >= 3");
  auto vid = [k](int a, int b) -> Vertex { return ((a % k + k) % k) * k + ((b % k + k) % k); };
  std::vector<Face> tris;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      tris.push_back({vid(a, b), vid(a + 1, b), vid(a + 1, b + 1)});
      tris.push_back({vid(a, b), vid(a, b + 1), vid(a + 1, b + 1)});
    }
  AffineSurfaceDatum s;
  s.complex = Complex::from_maximal(tris);
  s.multiplicity = unit_multiplicities(s.complex);
  // lattice offset from o to a neighbour v
  auto off = [k](Vertex o, Vertex v) {
    auto wrap = [k](long x) { return x == k - 1 ? -1L : (x == 1 - k ? 1L : x); };
    long da = wrap(v / k - o / k), db = wrap(v % k - o % k);
    return std::pair<long, long>{da, db};
  };
  // fan rule: u_i + u_k = d u_j
  for (int e : s.complex.of_size(2)) {
    const Face& f = s.complex.face(e);
    for (int side = 0; side < 2; ++side) {
      Vertex o = f[side], j = f[1 - side];
      EdgeApexes ap = edge_apexes(s.complex, o, j);
      auto ui = off(o, ap.i), uk = off(o, ap.k), uj = off(o, j);
      long sx = ui.first + uk.first, sy = ui.second + uk.second;
      long dv = uj.first != 0 ? sx / uj.first : sy / uj.second;
      if (sx != dv * uj.first || sy != dv * uj.second) throw DatumError("fan rule failed at edge " + face_str(f), f);
      s.d[{o, j}] = dv;
    }
  }
  return s;
}

DegenerationDatum build_mumford_torus(int k) { return build_kulikov_surface(mumford_torus_surface(k)); }

std::map<Vertex, long> unit_multiplicities(const Complex& c) {
  std::map<Vertex, long> n;
  for (auto v : c.vertices()) n[v] = 1;
  return n;
}

namespace {

AffineSurfaceDatum minus_one_form(const std::vector<Face>& tris) {
  AffineSurfaceDatum s;
  s.complex = Complex::from_maximal(tris);
  s.multiplicity = unit_multiplicities(s.complex);
  for (int e : s.complex.of_size(2)) {
    const Face& f = s.complex.face(e);
    s.d[{f[0], f[1]}] = 1;
    s.d[{f[1], f[0]}] = 1;
  }
  return s;
}

}  // namespace

AffineSurfaceDatum tetrahedron_surface() { return minus_one_form({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}); }

AffineSurfaceDatum icosahedron_surface() {
  std::vector<Face> tris;
  for (int i = 0; i < 5; ++i) {
    Vertex a = 1 + i, b = 1 + (i + 1) % 5, c = 6 + i, d = 6 + (i + 1) % 5;
    tris.push_back({0, a, b});
    tris.push_back({11, c, d});
    tris.push_back({a, b, c});
    tris.push_back({b, c, d});
  }
  for (auto& t : tris) std::sort(t.begin(), t.end());
  return minus_one_form(tris);
}

Complex cycle_graph(int m) {
  if (m < 3) throw DatumError("cycle graph needs m >= 3 (subdivide first)");
  std::vector<Face> edges;
  for (int i = 0; i < m; ++i) edges.push_back({std::min<Vertex>(i, (i + 1) % m), std::max<Vertex>(i, (i + 1) % m)});
  return Complex::from_maximal(edges);
}

Complex path_graph(int m) {
  if (m < 1) throw DatumError("path graph needs at least one vertex");
  if (m == 1) return Complex::from_maximal({{0}});
  std::vector<Face> edges;
  for (int i = 0; i + 1 < m; ++i) edges.push_back({i, i + 1});
  return Complex::from_maximal(edges);
}

}  // namespace skeletal
