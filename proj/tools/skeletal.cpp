// skeletal: command-line front end over the core library
#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "skeletal/affine.hpp"
#include "skeletal/datum_io.hpp"
#include "skeletal/kres.hpp"
#include "skeletal/parallel.hpp"
#include "skeletal/sheaf.hpp"
#include "skeletal/steenbrink.hpp"

using namespace skeletal;

namespace {

enum Exit { ok = 0, usage = 1, invalid = 2, theorem = 3 };

struct Loaded {
  DatumFile file;
  std::optional<StrataModel> model;
};

// loads and validates; returns an exit code != ok when the command must stop
int load(const std::string& path, Loaded& out) {
  try {
    out.file = load_datum(path);
  } catch (const ParseError& e) {
    std::cerr << path << ": " << e.what() << "\n";
    return usage;
  }
  ValidationResult v = validate_file(out.file);
  if (!v.ok) {
    std::cout << violations_json(v);
    return invalid;
  }
  out.model.emplace(to_degeneration(out.file));
  return ok;
}

void print_table(const BettiTable& t, const std::string& format) {
  std::cout << (format == "json" ? betti_json(t) : betti_tsv(t));
}

BettiTable select_rows(const BettiTable& t, const std::string& p) {
  if (p == "all") return t;
  int lo = 0, hi = 0;
  auto dash = p.find('-');
  try {
    lo = std::stoi(p.substr(0, dash));
    hi = dash == std::string::npos ? lo : std::stoi(p.substr(dash + 1));
  } catch (const std::exception&) {
    throw CLI::ValidationError("--p", "expected all, P or A-B");
  }
  if (lo < 0 || hi >= static_cast<int>(t.size()) || lo > hi) throw CLI::ValidationError("--p", "row out of range");
  BettiTable out;
  for (int i = 0; i < static_cast<int>(t.size()); ++i) out.push_back(i >= lo && i <= hi ? t[i] : std::vector<std::size_t>{});
  return out;
}

Face parse_face(const std::string& s) {
  Face f;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) f.push_back(std::stol(tok));
  std::sort(f.begin(), f.end());
  return f;
}

std::string vec_str(const VecQ& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + "]";
}

int cmd_validate(const std::string& path) {
  Loaded l;
  int rc = load(path, l);
  if (rc != ok) return rc;
  ValidationResult v;
  std::cout << violations_json(v);
  return ok;
}

int cmd_betti(const std::string& path, const std::string& p, const std::string& format, bool cross) {
  Loaded l;
  int rc = load(path, l);
  if (rc != ok) return rc;
  LambdaSheaf sheaf(*l.model, thread_count());
  BettiTable t = sheaf.betti_table();
  print_table(select_rows(t, p), format);
  if (!cross) return ok;
  KResolution kr(sheaf, thread_count());
  BettiTable k;
  for (int q = 0; q <= l.model->n(); ++q) {
    auto b = kr.total_betti(q);
    b.resize(t[q].size(), 0);
    k.push_back(b);
  }
  std::cout << "# total complex of the resolution\n";
  print_table(select_rows(k, p), format);
  bool agree = true;
  for (std::size_t q = 0; q < t.size(); ++q) agree = agree && same_betti(t[q], k[q]);
  std::cout << (agree ? "AGREE" : "DISAGREE") << "\n";
  return agree ? ok : theorem;
}

int cmd_steenbrink(const std::string& path) {
  Loaded l;
  int rc = load(path, l);
  if (rc != ok) return rc;
  LambdaSheaf sheaf(*l.model, thread_count());
  TheoremAReport r = theorem_a_check(sheaf);
  std::cout << "# sheaf cohomology\n" << betti_tsv(r.lambda) << "# Steenbrink rows\n" << betti_tsv(r.rows);
  for (auto [p, q] : r.mismatches) std::cout << "mismatch p=" << p << " q=" << q << "\n";
  std::cout << "theorem A: " << (r.ok ? "PASS" : "FAIL") << "\n";
  return r.ok ? ok : theorem;
}

int cmd_monodromy(const std::string& path, int p, int q, const std::string& method, bool cross) {
  Loaded l;
  int rc = load(path, l);
  if (rc != ok) return rc;
  int n = l.model->n();
  if (p < 1 || p > n || q < 0 || q > n) {
    std::cerr << "need 1 <= p <= " << n << " and 0 <= q <= " << n << "\n";
    return usage;
  }
  LambdaSheaf sheaf(*l.model, thread_count());
  std::optional<KResolution> kr;
  auto matrix = [&](const std::string& m) {
    if (m == "snake") return sheaf.monodromy_snake(p, q);
    if (m == "rows") return row_n_matrix(*l.model, p, q);
    if (!kr) kr.emplace(sheaf, thread_count());
    return kcomplex_n_matrix(*kr, p, q);
  };
  MatQ a = matrix(method);
  std::cout << "# N: H^" << q << "(Λ^" << p << ") -> H^" << q + 1 << "(Λ^" << p - 1 << "), " << a.rows() << "x"
            << a.cols() << ", method " << method << "\n"
            << format_matrix(a) << "rank " << rank(a) << "\n";
  if (!cross) return ok;
  std::size_t rs = rank(matrix("snake")), rk = rank(matrix("kcomplex")), rr = rank(matrix("rows"));
  std::cout << "rank snake " << rs << " kcomplex " << rk << " rows " << rr << "\n"
            << (rs == rk && rk == rr ? "AGREE" : "DISAGREE") << "\n";
  return rs == rk && rk == rr ? ok : theorem;
}

int cmd_lefschetz(const std::string& path, const std::string& omega_arg) {
  Loaded l;
  int rc = load(path, l);
  if (rc != ok) return rc;
  Omega om;
  try {
    if (omega_arg == "auto") {
      if (!is_surface(l.file)) {
        std::cerr << "--omega auto needs a surface datum\n";
        return usage;
      }
      om = build_omega_minus_one(to_surface(l.file), *l.model);
    } else {
      om = load_omega(omega_arg, *l.model);
    }
  } catch (const ParseError& e) {
    std::cerr << omega_arg << ": " << e.what() << "\n";
    return usage;
  } catch (const DatumError& e) {
    std::cout << "hypothesis not met: " << e.what() << "\n";
    return theorem;
  }
  LefschetzReport lr;
  try {
    lr = lefschetz_check(*l.model, om);
  } catch (const std::invalid_argument& e) {
    std::cout << "hypothesis not met: " << e.what() << "\n";
    return theorem;
  }
  for (const auto& [v, sq] : lr.squares) std::cout << "omega_" << v << "^2 = " << sq.get_str() << "\n";
  std::cout << "rank checks " << lr.rank_checks << "\n";
  for (const auto& f : lr.failures) std::cout << "failure: " << f << "\n";
  std::cout << "lefschetz: " << (lr.ok ? "PASS" : "FAIL") << "\n";
  LambdaSheaf sheaf(*l.model, thread_count());
  TheoremAPrimeReport ap = theorem_a_prime_check(sheaf, lr);
  if (!ap.ran) {
    std::cout << "hard lefschetz / hodge symmetry: SKIPPED (" << ap.skipped << ")\n";
  } else {
    std::cout << betti_tsv(ap.table);
    for (const auto& f : ap.failures) std::cout << "failure: " << f << "\n";
    std::cout << "hard lefschetz / hodge symmetry: " << (ap.ok ? "PASS" : "FAIL") << "\n";
  }
  return lr.ok && (!ap.ran || ap.ok) ? ok : theorem;
}

int cmd_blowup(const std::string& path, const std::string& center, const std::string& output) {
  Loaded l;
  int rc = load(path, l);
  if (rc != ok) return rc;
  if (!is_surface(l.file)) {
    std::cerr << "blowup needs a surface datum\n";
    return usage;
  }
  AffineSurfaceDatum s = to_surface(l.file);
  Face c = parse_face(center);
  if (!s.complex.is_face(c) || c.size() < 2) {
    std::cerr << "center " << center << " is not an edge or triangle of the complex\n";
    return usage;
  }
  std::string out = dump_datum(datum_from_surface(blowup(s, c)));
  if (output.empty()) {
    std::cout << out;
  } else {
    std::ofstream f(output);
    if (!f) {
      std::cerr << "cannot write " << output << "\n";
      return usage;
    }
    f << out;
  }
  return ok;
}

int cmd_affine(const std::string& path, std::optional<long> vertex) {
  Loaded l;
  int rc = load(path, l);
  if (rc != ok) return rc;
  if (!is_surface(l.file)) {
    std::cerr << "affine needs a surface datum\n";
    return usage;
  }
  AffineSurfaceDatum s = to_surface(l.file);
  if (vertex && !s.complex.is_face({*vertex})) {
    std::cerr << "no vertex " << *vertex << "\n";
    return usage;
  }
  bool all_ok = true;
  for (const auto& ch : charts(s)) {
    if (vertex && ch.o != *vertex && ch.j != *vertex) continue;
    bool good = chart_ok(s, ch);
    all_ok = all_ok && good;
    std::cout << "chart edge " << ch.o << "," << ch.j << " apexes " << ch.i << "," << ch.k << " d " << ch.d << " g_j "
              << vec_str({ch.g_j[0], ch.g_j[1]}) << " g_i " << vec_str({ch.g_i[0], ch.g_i[1]}) << " g_k "
              << vec_str({ch.g_k[0], ch.g_k[1]}) << " volumes " << ch.volume_i.get_str() << "," << ch.volume_k.get_str()
              << (good ? "" : " INVALID") << "\n";
  }
  auto show = [&](Vertex v) {
    MatQ m = vertex_monodromy(s, v);
    std::cout << "monodromy " << v << " [[" << m(0, 0).get_str() << "," << m(0, 1).get_str() << "],[" << m(1, 0).get_str()
              << "," << m(1, 1).get_str() << "]]\n";
  };
  if (vertex) show(*vertex);
  else
    for (auto v : s.complex.vertices()) show(v);
  auto sing = singular_vertices(s);
  std::cout << "singular";
  for (auto v : sing) std::cout << " " << v;
  std::cout << "\n";
  LambdaSheaf sheaf(*l.model, thread_count());
  Lambda1Comparison cmp = compare_lambda1(sheaf, s);
  for (const auto& [f, why] : cmp.failures) std::cout << "lambda1 mismatch at " << face_str(f) << ": " << why << "\n";
  std::cout << "lambda1 vs affine sections: " << (cmp.ok ? "AGREE" : "DISAGREE") << " (" << cmp.faces_checked
            << " faces)\n";
  return all_ok && cmp.ok ? ok : theorem;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"skeletal: Λ-sheaf cohomology of degeneration data"};
  app.require_subcommand(1);
  std::string file, p = "all", format = "tsv", method = "snake", omega = "auto", center, output;
  int pp = 1, qq = 0;
  long vertex = 0;
  bool cross = false;

  auto* v = app.add_subcommand("validate", "check a datum file");
  v->add_option("file", file)->required();

  auto* b = app.add_subcommand("betti", "table of dim H^q(Λ^p)");
  b->add_option("file", file)->required();
  b->add_option("--p", p, "all, P or A-B");
  b->add_option("--format", format)->check(CLI::IsMember({"tsv", "json"}));
  b->add_flag("--cross-check", cross, "also compute the total complex of the resolution");

  auto* s = app.add_subcommand("steenbrink", "compare with the Steenbrink rows");
  s->add_option("file", file)->required();

  auto* m = app.add_subcommand("monodromy", "matrix of N on cohomology");
  m->add_option("file", file)->required();
  m->add_option("--p", pp)->required();
  m->add_option("--q", qq)->required();
  m->add_option("--method", method)->check(CLI::IsMember({"snake", "kcomplex", "rows"}));
  m->add_flag("--cross-check", cross, "compare ranks of all three methods");

  auto* l = app.add_subcommand("lefschetz", "combinatorial Lefschetz check");
  l->add_option("file", file)->required();
  l->add_option("--omega", omega, "auto or a JSON file");

  auto* u = app.add_subcommand("blowup", "subdivide an edge or a triangle");
  u->add_option("file", file)->required();
  u->add_option("--center", center, "comma separated vertex ids")->required();
  u->add_option("-o,--output", output);

  auto* a = app.add_subcommand("affine", "charts, vertex monodromy and singular vertices");
  a->add_option("file", file)->required();
  auto* vopt = a->add_option("--vertex", vertex);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? ok : usage;
  }
  try {
    if (v->parsed()) return cmd_validate(file);
    if (b->parsed()) return cmd_betti(file, p, format, cross);
    if (s->parsed()) return cmd_steenbrink(file);
    if (m->parsed()) return cmd_monodromy(file, pp, qq, method, cross);
    if (l->parsed()) return cmd_lefschetz(file, omega);
    if (u->parsed()) return cmd_blowup(file, center, output);
    if (a->parsed()) return cmd_affine(file, vopt->count() ? std::optional<long>(vertex) : std::nullopt);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return usage;
  } catch (const DatumError& e) {
    std::cerr << "datum error: " << e.what() << "\n";
    return invalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return theorem;
  }
  return usage;
}
