// Acceptance run: one PASS/FAIL line per criterion, with wall time.
// usage: acceptance <data dir>
// exit status is the number of failed criteria
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "skeletal/affine.hpp"
#include "skeletal/datum_io.hpp"
#include "skeletal/kres.hpp"
#include "skeletal/steenbrink.hpp"

using namespace skeletal;

namespace {

std::string data_dir;

DegenerationDatum load(const std::string& stem) { return to_degeneration(load_datum(data_dir + "/" + stem + ".json")); }

struct Outcome {
  bool ok = true;
  std::string note;
  void fail(const std::string& why) {
    if (ok) note = why;
    ok = false;
  }
};

std::vector<Face> centers(const AffineSurfaceDatum& s) {
  std::vector<Face> out;
  const auto& e = s.complex.of_size(2);
  const auto& t = s.complex.of_size(3);
  for (std::size_t i = 0; i < 3; ++i) out.push_back(s.complex.face(e[i * (e.size() / 3)]));
  for (std::size_t i = 0; i < 3; ++i) out.push_back(s.complex.face(t[i * (t.size() / 3)]));
  return out;
}

Outcome validators() {
  Outcome o;
  for (std::string stem : {"i3", "i5", "path4", "point", "tetra", "icosa", "mumford3", "mumford3_explicit"}) {
    ValidationResult v = validate_file(load_datum(data_dir + "/" + stem + ".json"));
    if (!v.ok) o.fail(stem + " rejected: " + v.violations.front().check);
  }
  for (std::string stem : {"tetra_bad_selfints", "loop_curve", "multi_edge_curve"}) {
    ValidationResult v = validate_file(load_datum(data_dir + "/" + stem + ".json"));
    if (v.ok) o.fail(stem + " accepted");
  }
  return o;
}

Outcome resolution_suite() {
  Outcome o;
  std::vector<DegenerationDatum> data{load("i3"), load("path4"), load("tetra"), load("mumford3"),
                                      build_kulikov_surface(blowup(tetrahedron_surface(), {0, 1}))};
  for (const auto& d : data) {
    StrataModel m(d);
    LambdaSheaf l(m);
    KResolution kr(l);
    const Complex& c = l.complex();
    for (std::size_t s = 0; s < c.size(); ++s) {
      int si = static_cast<int>(s);
      const Face& f = c.face(si);
      for (int p = 0; p <= m.n(); ++p) {
        for (int r = 0; r < p; ++r) {
          MatQ first;
          try {
            first = kr.d_prime(si, r, p, f.front());  // throws if the image leaves K
            for (auto k : f)
              if (!(kr.d_prime(si, r, p, k) == first)) o.fail("ind-k at " + face_str(f));
          } catch (const std::exception& e) {
            o.fail(std::string("preserves: ") + e.what());
          }
        }
        auto cx = kr.resolution_complex(si, p);
        if (!oracle::squares_to_zero(cx)) o.fail("d'^2 at " + face_str(f));
        auto b = oracle::betti(cx);
        for (std::size_t q = 1; q < b.size(); ++q)
          if (b[q]) o.fail("reso at " + face_str(f));
        if (!(kr.h0_kernel(si, p) == l.lambda_space(si, p))) o.fail("h0 at " + face_str(f));
        for (int r = 0; r <= p; ++r)
          if (!kr.check_compatibility(si, r, p)) o.fail("compatibility at " + face_str(f));
        auto mb = oracle::betti(m_complex(m, p, si));
        for (std::size_t q = 1; q < mb.size(); ++q)
          if (mb[q]) o.fail("h0m at " + face_str(f));
      }
    }
  }
  for (int k = 0; k <= 4; ++k) {
    Face tau;
    for (int v = 0; v <= k; ++v) tau.push_back(v);
    for (int n = 0; n <= k; ++n) {
      auto b = oracle::betti(residue_complex(tau, n));
      if (b.empty() || b[0] != 1) o.fail("residue H^0");
      for (std::size_t q = 1; q < b.size(); ++q)
        if (b[q]) o.fail("residue H^" + std::to_string(q));
    }
  }
  return o;
}

Outcome quasi_iso() {
  Outcome o;
  for (std::string stem : {"i3", "i5", "path4", "tetra", "icosa", "mumford3"}) {
    StrataModel m(load(stem));
    LambdaSheaf l(m);
    KResolution kr(l);
    for (int p = 0; p <= m.n(); ++p)
      if (!same_betti(oracle::betti(kr.total_complex(p).cx), oracle::betti(l.cech_complex(p))))
        o.fail(stem + " p=" + std::to_string(p));
  }
  return o;
}

Outcome theorem_a() {
  Outcome o;
  for (std::string stem : {"i3", "i5", "path4", "tetra", "icosa", "mumford3"}) {
    StrataModel m(load(stem));
    LambdaSheaf l(m);
    KResolution kr(l);
    if (!theorem_a_check(l).ok) o.fail(stem + " table");
    for (int p = 1; p <= m.n(); ++p)
      if (!compare_n_ranks(l, kr, p).agree()) o.fail(stem + " N ranks p=" + std::to_string(p));
  }
  return o;
}

Outcome a_prime() {
  Outcome o;
  for (auto s : {tetrahedron_surface(), icosahedron_surface()}) {
    StrataModel m(build_kulikov_surface(s));
    LambdaSheaf l(m);
    LefschetzReport lr = lefschetz_check(m, build_omega_minus_one(s, m));
    if (!lr.ok) o.fail("lefschetz");
    TheoremAPrimeReport r = theorem_a_prime_check(l, lr);
    if (!r.ran || !r.ok) o.fail("A' " + (r.failures.empty() ? r.skipped : r.failures.front()));
    int n = m.n();
    for (int p = 0; p <= n; ++p)
      for (int q = 0; q <= n; ++q) {
        if (r.table.size() <= static_cast<std::size_t>(n)) break;
        if (r.table[n - p][n - q] != r.table[p][q]) o.fail("symmetry");
        if (p > q) {
          MatQ acc = MatQ::identity(r.table[p][q]);
          for (int k = 0; k < p - q; ++k) acc = l.monodromy_snake(p - k, q + k) * acc;
          if (oracle::rank(acc) != r.table[p][q] || r.table[q][p] != r.table[p][q]) o.fail("N^{p-q} iso");
        }
      }
  }
  StrataModel tm(build_kulikov_surface(tetrahedron_surface()));
  auto t = LambdaSheaf(tm).betti_table();
  if (t[2][0] != 1 || t[0][2] != 1 || t[1][0] != 0 || t[0][1] != 0) o.fail("tetra low corner");
  return o;
}

Outcome known_answers() {
  Outcome o;
  for (std::string stem : {"i3", "i5"}) {
    StrataModel m(load(stem));
    LambdaSheaf l(m);
    for (const auto& row : l.betti_table())
      for (auto x : row)
        if (x != 1) o.fail(stem + " table");
    auto w = limit_weight_graded(l, 1);
    std::size_t total = 0;
    for (auto [wt, x] : w) total += x;
    if (w[0] != 1 || w[2] != 1 || total != 2) o.fail(stem + " weights");
  }
  StrataModel m(load("mumford3"));
  LambdaSheaf l(m);
  auto t = l.betti_table();
  const std::size_t b[3] = {1, 2, 1}, totals[5] = {1, 4, 6, 4, 1};
  for (int p = 0; p <= 2; ++p)
    for (int q = 0; q <= 2; ++q)
      if (t[p][q] != b[p] * b[q]) o.fail("mumford table");
  for (int k = 0; k <= 4; ++k) {
    std::size_t sum = 0;
    for (int p = 0; p <= 2; ++p)
      if (k - p >= 0 && k - p <= 2) sum += t[p][k - p];
    if (sum != totals[k]) o.fail("mumford totals");
  }
  return o;
}

Outcome subdivision() {
  Outcome o;
  std::size_t blowups = 0;
  for (auto s : {tetrahedron_surface(), icosahedron_surface(), mumford_torus_surface(3)}) {
    StrataModel m0(build_kulikov_surface(s));
    auto base = theorem_a_check(LambdaSheaf(m0));
    for (const auto& center : centers(s)) {
      auto b = blowup(s, center);
      StrataModel m(build_kulikov_surface(b));
      auto rep = theorem_a_check(LambdaSheaf(m));
      if (!(rep.lambda == base.lambda)) o.fail("Lambda table changed at " + face_str(center));
      for (std::size_t p = 0; p < rep.rows.size(); ++p)
        if (p >= base.rows.size() || !same_betti(rep.rows[p], base.rows[p])) o.fail("rows changed at " + face_str(center));
      ++blowups;
    }
  }
  if (blowups < 18) o.fail("too few centers");
  o.note = o.ok ? std::to_string(blowups) + " blow-ups" : o.note;
  return o;
}

Outcome affine_comparison() {
  Outcome o;
  for (auto s : {tetrahedron_surface(), mumford_torus_surface(3)}) {
    for (auto x : {s, blowup(s, {0, 1})}) {
      StrataModel m(build_kulikov_surface(x));
      LambdaSheaf l(m);
      auto r = compare_lambda1(l, x);
      if (!r.ok) o.fail("lambda1 vs affine at " + face_str(r.failures.front().first));
    }
  }
  auto mu = mumford_torus_surface(3);
  for (auto v : mu.complex.vertices())
    if (!(vertex_monodromy(mu, v) == MatQ::identity(2))) o.fail("mumford monodromy");
  auto t = tetrahedron_surface();
  for (auto v : t.complex.vertices())
    if (vertex_monodromy(t, v) == MatQ::identity(2)) o.fail("tetra monodromy trivial");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  data_dir = argc > 1 ? argv[1] : "data";
  struct Criterion {
    const char* name;
    double limit;  // seconds, 0 = none
    std::function<Outcome()> run;
  };
  std::vector<Criterion> all{
      {"validators", 5, validators},
      {"resolution suite", 60, resolution_suite},
      {"quasi-isomorphism", 0, quasi_iso},
      {"theorem A and N ranks", 0, theorem_a},
      {"A' and B on tetra/icosa", 0, a_prime},
      {"known answers", 0, known_answers},
      {"subdivision invariance", 120, subdivision},
      {"lambda1 vs affine sections", 0, affine_comparison},
  };
  int failed = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = all[i].run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (all[i].limit > 0 && sec > all[i].limit) o.fail("over time limit");
    if (!o.ok) ++failed;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2fs", sec);
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << i + 1 << " " << all[i].name << " (" << buf << ")";
    if (!o.note.empty()) std::cout << ": " << o.note;
    std::cout << std::endl;
  }
  return failed;
}
