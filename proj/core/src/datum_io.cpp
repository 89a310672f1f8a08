#include "skeletal/datum_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace skeletal {

using json = nlohmann::json;

namespace {

struct Pos {
  std::size_t line, column;
};

Pos position_of(const std::string& text, std::size_t byte) {
  Pos p{1, 1};
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  return p;
}

// semantic errors have no byte offset in the DOM; point at the first occurrence of the token if any
[[noreturn]] void fail_at(const std::string& text, const std::string& token, const std::string& msg) {
  std::size_t at = token.empty() ? std::string::npos : text.find(token);
  if (at == std::string::npos) throw ParseError(msg);
  Pos p = position_of(text, at);
  throw ParseError(msg, p.line, p.column);
}

struct Reader {
  const std::string& text;

  const json& need(const json& obj, const char* key, const std::string& where) const {
    if (!obj.is_object() || !obj.contains(key)) fail_at(text, "", where + ": missing \"" + key + "\"");
    return obj.at(key);
  }

  long integer(const json& v, const std::string& where) const {
    if (!v.is_number_integer()) fail_at(text, v.dump(), where + ": expected an integer, got " + v.dump());
    return v.get<long>();
  }

  Face face(const json& v, const std::string& where) const {
    if (!v.is_array()) fail_at(text, v.dump(), where + ": expected a list of vertex ids");
    Face f;
    for (std::size_t i = 0; i < v.size(); ++i) f.push_back(integer(v[i], where + "[" + std::to_string(i) + "]"));
    std::sort(f.begin(), f.end());
    return f;
  }

  Q rational(const json& v, const std::string& where) const {
    if (v.is_number_integer()) return Q(v.get<long>());
    if (!v.is_string()) fail_at(text, v.dump(), where + ": rationals are written as \"num/den\" strings");
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail_at(text, v.dump(), where + ": " + e.what());
    }
  }

  VecQ vec(const json& v, const std::string& where) const {
    if (!v.is_array()) fail_at(text, v.dump(), where + ": expected a list of rationals");
    VecQ out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(rational(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
  }
};

json face_json(const Face& f) { return json(std::vector<long>(f.begin(), f.end())); }

json vec_json(const VecQ& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(rational_string(x));
  return a;
}

Complex complex_of(const DatumFile& f) {
  std::vector<Face> maximal = f.faces;
  std::set<Vertex> seen;
  for (const auto& m : maximal) seen.insert(m.begin(), m.end());
  for (const auto& [v, n] : f.multiplicity)
    if (!seen.count(v)) maximal.push_back({v});
  return Complex::from_maximal(maximal);
}

// loops and repeated maximal faces cannot be represented: the complex must be simplicial
void structural_checks(const DatumFile& f, ValidationResult& out) {
  auto add = [&](const std::string& check, const Face& face, const std::string& detail) {
    out.ok = false;
    out.violations.push_back({check, face, detail});
  };
  std::set<Face> seen;
  for (const auto& m : f.faces) {
    if (m.empty()) {
      add("empty face", m, "faces must be nonempty");
      continue;
    }
    if (std::adjacent_find(m.begin(), m.end()) != m.end()) {
      add(m.size() == 2 ? "loop" : "repeated vertex", m, "face repeats a vertex; subdivide first");
      continue;
    }
    if (!seen.insert(m).second)
      add(m.size() == 2 ? "multi-edge" : "repeated face", m, "face listed twice; subdivide first");
  }
  if (!out.ok) return;
  SimplicialReport sr = validate_simplicial(f.faces, f.dimension);
  for (const auto& v : sr.violations)
    if (v.kind != "not closed under subsets") add(v.kind, v.face, v.detail);  // closure is taken on load
  for (const auto& m : f.faces)
    for (auto v : m)
      if (!f.multiplicity.count(v)) add("multiplicity", {v}, "vertex has no multiplicity entry");
  for (const auto& [v, n] : f.multiplicity)
    if (n <= 0) add("multiplicity", {v}, "multiplicity must be positive, got " + std::to_string(n));
  if (!out.ok) return;
  Complex c = complex_of(f);
  if (c.dimension() != f.dimension)
    add("dimension", {}, "declared dimension " + std::to_string(f.dimension) + " but faces span dimension " +
                             std::to_string(c.dimension()));
}

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error(line ? "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what
                              : what),
      line_(line),
      column_(column) {}

std::string kind_name(DatumKind k) {
  switch (k) {
    case DatumKind::generic: return "generic";
    case DatumKind::kulikov_surface: return "kulikov_surface";
    case DatumKind::curve: return "curve";
    case DatumKind::mumford_torus: return "mumford_torus";
  }
  return "?";
}

Q parse_rational(const std::string& s) {
  auto slash = s.find('/');
  std::string num = s.substr(0, slash), den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  auto is_int = [](const std::string& x) {
    std::size_t i = (!x.empty() && (x[0] == '-' || x[0] == '+')) ? 1 : 0;
    return i < x.size() && std::all_of(x.begin() + i, x.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
  };
  if (!is_int(num) || !is_int(den)) throw std::invalid_argument("malformed rational \"" + s + "\"");
  mpz_class n(num[0] == '+' ? num.substr(1) : num), dd(den[0] == '+' ? den.substr(1) : den);
  if (dd == 0) throw std::invalid_argument("zero denominator in \"" + s + "\"");
  Q q(n, dd);
  q.canonicalize();
  return q;
}

std::string rational_string(const Q& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

DatumFile parse_datum(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    Pos p = position_of(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string msg = e.what();
    auto cut = msg.find(": ", msg.find("parse error"));
    throw ParseError("invalid JSON" + (cut == std::string::npos ? std::string() : msg.substr(cut)), p.line, p.column);
  }
  if (!j.is_object()) throw ParseError("top level must be an object", 1, 1);
  Reader rd{text};
  DatumFile f;
  const json& kind = rd.need(j, "kind", "datum");
  std::string ks = kind.is_string() ? kind.get<std::string>() : "";
  if (ks == "generic") f.kind = DatumKind::generic;
  else if (ks == "kulikov_surface") f.kind = DatumKind::kulikov_surface;
  else if (ks == "curve") f.kind = DatumKind::curve;
  else if (ks == "mumford_torus") f.kind = DatumKind::mumford_torus;
  else fail_at(text, kind.dump(), "unknown kind " + kind.dump());

  if (f.kind == DatumKind::mumford_torus) {
    f.k = static_cast<int>(rd.integer(rd.need(j, "k", "mumford_torus"), "k"));
    f.dimension = 2;
    if (j.contains("dimension")) f.dimension = static_cast<int>(rd.integer(j["dimension"], "dimension"));
  } else {
    f.dimension = static_cast<int>(rd.integer(rd.need(j, "dimension", "datum"), "dimension"));
  }
  if (j.contains("vertices") || f.kind != DatumKind::mumford_torus) {
    const json& vs = rd.need(j, "vertices", "datum");
    if (!vs.is_array()) fail_at(text, "\"vertices\"", "vertices: expected a list");
    for (std::size_t i = 0; i < vs.size(); ++i) {
      std::string w = "vertices[" + std::to_string(i) + "]";
      Vertex id = rd.integer(rd.need(vs[i], "id", w), w + ".id");
      long n = rd.integer(rd.need(vs[i], "multiplicity", w), w + ".multiplicity");
      if (!f.multiplicity.emplace(id, n).second) fail_at(text, "", w + ": vertex " + std::to_string(id) + " listed twice");
    }
  }
  if (j.contains("faces") || f.kind != DatumKind::mumford_torus) {
    const json& fs = rd.need(j, "faces", "datum");
    if (!fs.is_array()) fail_at(text, "\"faces\"", "faces: expected a list");
    for (std::size_t i = 0; i < fs.size(); ++i) f.faces.push_back(rd.face(fs[i], "faces[" + std::to_string(i) + "]"));
  }
  if (j.contains("mode")) {
    f.has_mode = true;
    std::string m = j["mode"].is_string() ? j["mode"].get<std::string>() : "";
    if (m == "explicit") f.mode = RelationMode::explicit_relations;
    else if (m == "pairing") f.mode = RelationMode::pairing;
    else fail_at(text, j["mode"].dump(), "mode must be \"explicit\" or \"pairing\"");
  }
  if (j.contains("relations")) {
    const json& rs = j["relations"];
    if (!rs.is_array()) fail_at(text, "\"relations\"", "relations: expected a list");
    for (std::size_t i = 0; i < rs.size(); ++i) {
      std::string w = "relations[" + std::to_string(i) + "]";
      Face face = rd.face(rd.need(rs[i], "face", w), w + ".face");
      int r = static_cast<int>(rd.integer(rd.need(rs[i], "degree", w), w + ".degree"));
      const json& vs = rd.need(rs[i], "vectors", w);
      if (!vs.is_array()) fail_at(text, "", w + ".vectors: expected a list");
      auto& dst = f.relations[{face, r}];
      for (std::size_t a = 0; a < vs.size(); ++a) dst.push_back(rd.vec(vs[a], w + ".vectors[" + std::to_string(a) + "]"));
    }
  }
  if (j.contains("self_classes")) {
    const json& ss = j["self_classes"];
    if (!ss.is_array()) fail_at(text, "\"self_classes\"", "self_classes: expected a list");
    for (std::size_t i = 0; i < ss.size(); ++i) {
      std::string w = "self_classes[" + std::to_string(i) + "]";
      Face face = rd.face(rd.need(ss[i], "face", w), w + ".face");
      Vertex v = rd.integer(rd.need(ss[i], "vertex", w), w + ".vertex");
      f.self_classes[{face, v}] = rd.vec(rd.need(ss[i], "vector", w), w + ".vector");
    }
  }
  if (j.contains("d")) {
    const json& ds = j["d"];
    if (!ds.is_array()) fail_at(text, "\"d\"", "d: expected a list");
    for (std::size_t i = 0; i < ds.size(); ++i) {
      std::string w = "d[" + std::to_string(i) + "]";
      Vertex o = rd.integer(rd.need(ds[i], "vertex", w), w + ".vertex");
      Face e = rd.face(rd.need(ds[i], "edge", w), w + ".edge");
      long val = rd.integer(rd.need(ds[i], "value", w), w + ".value");
      if (e.size() != 2 || e[0] == e[1] || !face_has(e, o))
        fail_at(text, "", w + ": edge must be two distinct vertices containing the vertex");
      Vertex other = e[0] == o ? e[1] : e[0];
      if (!f.d.emplace(std::pair{o, other}, val).second) fail_at(text, "", w + ": flag listed twice");
    }
  }
  return f;
}

DatumFile load_datum(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_datum(ss.str());
}

std::string dump_datum(const DatumFile& f) {
  json j;
  j["kind"] = kind_name(f.kind);
  j["dimension"] = f.dimension;
  if (f.kind == DatumKind::mumford_torus) j["k"] = f.k;
  if (f.kind != DatumKind::mumford_torus || !f.multiplicity.empty()) {
    json vs = json::array();
    for (const auto& [v, n] : f.multiplicity) vs.push_back({{"id", v}, {"multiplicity", n}});
    j["vertices"] = vs;
  }
  if (f.kind != DatumKind::mumford_torus || !f.faces.empty()) {
    json fs = json::array();
    for (const auto& m : f.faces) fs.push_back(face_json(m));
    j["faces"] = fs;
  }
  if (f.has_mode) j["mode"] = f.mode == RelationMode::pairing ? "pairing" : "explicit";
  if (!f.relations.empty()) {
    json rs = json::array();
    for (const auto& [key, vecs] : f.relations) {
      json vv = json::array();
      for (const auto& v : vecs) vv.push_back(vec_json(v));
      rs.push_back({{"face", face_json(key.first)}, {"degree", key.second}, {"vectors", vv}});
    }
    j["relations"] = rs;
  }
  if (!f.self_classes.empty()) {
    json ss = json::array();
    for (const auto& [key, v] : f.self_classes)
      ss.push_back({{"face", face_json(key.first)}, {"vertex", key.second}, {"vector", vec_json(v)}});
    j["self_classes"] = ss;
  }
  if (!f.d.empty()) {
    json ds = json::array();
    for (const auto& [key, val] : f.d) {
      Face e{key.first, key.second};
      std::sort(e.begin(), e.end());
      ds.push_back({{"vertex", key.first}, {"edge", face_json(e)}, {"value", val}});
    }
    j["d"] = ds;
  }
  return j.dump(2) + "\n";
}

void save_datum(const std::string& path, const DatumFile& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << dump_datum(f);
}

DatumFile datum_from_surface(const AffineSurfaceDatum& s) {
  DatumFile f;
  f.kind = DatumKind::kulikov_surface;
  f.dimension = 2;
  f.multiplicity = s.multiplicity;
  f.faces = s.complex.maximal_faces();
  f.d = s.d;
  return f;
}

bool is_surface(const DatumFile& f) {
  return f.kind == DatumKind::kulikov_surface || f.kind == DatumKind::mumford_torus;
}

AffineSurfaceDatum to_surface(const DatumFile& f) {
  if (f.kind == DatumKind::mumford_torus) return mumford_torus_surface(f.k);
  if (f.kind != DatumKind::kulikov_surface) throw DatumError("not a surface datum (kind " + kind_name(f.kind) + ")");
  ValidationResult vr;
  structural_checks(f, vr);
  if (!vr.ok) throw DatumError(vr.violations.front().check + ": " + vr.violations.front().detail, vr.violations.front().face);
  AffineSurfaceDatum s;
  s.complex = complex_of(f);
  s.multiplicity = f.multiplicity;
  s.d = f.d;
  return s;
}

DegenerationDatum to_degeneration(const DatumFile& f) {
  if (f.kind == DatumKind::mumford_torus) return build_mumford_torus(f.k);
  if (f.kind == DatumKind::kulikov_surface)
    return build_kulikov_surface(to_surface(f), f.has_mode ? f.mode : RelationMode::pairing, f.relations);
  ValidationResult vr;
  structural_checks(f, vr);
  if (!vr.ok) throw DatumError(vr.violations.front().check + ": " + vr.violations.front().detail, vr.violations.front().face);
  Complex c = complex_of(f);
  if (f.kind == DatumKind::curve) return build_curve(c, f.multiplicity);
  DegenerationDatum d;
  d.complex = c;
  d.multiplicity = f.multiplicity;
  d.mode = f.has_mode ? f.mode : RelationMode::explicit_relations;
  d.relations = f.relations;
  d.self_classes = f.self_classes;
  for (const auto& [key, vecs] : f.relations) {
    if (!c.is_face(key.first)) throw DatumError("relation on a non-face", key.first);
    std::size_t g = generators(c, key.first, key.second).size();
    for (const auto& v : vecs)
      if (v.size() != g)
        throw DatumError("relation vector has " + std::to_string(v.size()) + " entries, expected " + std::to_string(g),
                         key.first);
  }
  for (const auto& [key, v] : f.self_classes) {
    if (!c.is_face(key.first) || !face_has(key.first, key.second))
      throw DatumError("self class needs a face containing the vertex", key.first);
    if (c.codim(c.id(key.first)) < 1) continue;
    std::size_t g = generators(c, key.first, 1).size();
    if (v.size() != g)
      throw DatumError("self class has " + std::to_string(v.size()) + " entries, expected " + std::to_string(g), key.first);
  }
  return d;
}

ValidationResult validate_file(const DatumFile& f) {
  ValidationResult out;
  auto add = [&](const std::string& check, const Face& face, const std::string& detail) {
    out.ok = false;
    out.violations.push_back({check, face, detail});
  };
  if (f.kind == DatumKind::mumford_torus) {
    if (f.k < 3) add("mumford k", {}, "k must be at least 3");
    if (!out.ok) return out;
  } else {
    structural_checks(f, out);
    if (!out.ok) return out;
  }
  if (f.kind == DatumKind::curve && f.dimension > 1) add("dimension", {}, "curve data must have dimension at most 1");
  if (is_surface(f) && f.dimension != 2) add("dimension", {}, "surface data must have dimension 2");
  if (!out.ok) return out;
  if (f.kind == DatumKind::kulikov_surface) {
    try {
      DatumReport sr = validate_surface(to_surface(f));
      for (const auto& x : sr.failures) add(x.check, x.face, x.detail);
    } catch (const DatumError& e) {
      add("surface", e.where(), e.what());
    }
    if (!out.ok) return out;
  }
  try {
    StrataModel m(to_degeneration(f));
    DatumReport dr = validate_datum(m);
    for (const auto& x : dr.failures) add(x.check, x.face, x.detail);
  } catch (const DatumError& e) {
    add("datum", e.where(), e.what());
  } catch (const std::exception& e) {
    add("datum", {}, e.what());
  }
  return out;
}

std::string violations_json(const ValidationResult& v) {
  json vs = json::array();
  for (const auto& x : v.violations) vs.push_back({{"check", x.check}, {"face", face_json(x.face)}, {"detail", x.detail}});
  json j{{"ok", v.ok}, {"violations", vs}};
  return j.dump(2) + "\n";
}

std::string betti_tsv(const BettiTable& t) {
  std::size_t cols = 0;
  for (const auto& row : t) cols = std::max(cols, row.size());
  std::ostringstream os;
  os << "p";
  for (std::size_t q = 0; q < cols; ++q) os << "\tq" << q;
  os << "\n";
  for (std::size_t p = 0; p < t.size(); ++p) {
    os << p;
    for (std::size_t q = 0; q < cols; ++q) os << "\t" << (q < t[p].size() ? t[p][q] : 0);
    os << "\n";
  }
  return os.str();
}

std::string betti_json(const BettiTable& t) { return json{{"betti", t}}.dump() + "\n"; }

BettiTable parse_betti_tsv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  BettiTable t;
  if (!std::getline(in, line)) return t;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::getline(ls, cell, '\t');
    std::vector<std::size_t> row;
    while (std::getline(ls, cell, '\t')) row.push_back(std::stoul(cell));
    t.push_back(row);
  }
  return t;
}

Omega load_omega(const std::string& path, const StrataModel& m) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    Pos p = position_of(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("invalid JSON in omega file", p.line, p.column);
  }
  Reader rd{text};
  const json& os = rd.need(j, "omega", "omega file");
  if (!os.is_array()) fail_at(text, "\"omega\"", "omega: expected a list");
  Omega om;
  for (std::size_t i = 0; i < os.size(); ++i) {
    std::string w = "omega[" + std::to_string(i) + "]";
    Vertex v = rd.integer(rd.need(os[i], "vertex", w), w + ".vertex");
    if (!m.complex().is_face({v})) fail_at(text, "", w + ": unknown vertex " + std::to_string(v));
    VecQ c = rd.vec(rd.need(os[i], "class", w), w + ".class");
    if (c.size() != m.dim(Face{v}, 1))
      fail_at(text, "", w + ": class has " + std::to_string(c.size()) + " entries, 'H^2 has dimension " +
                            std::to_string(m.dim(Face{v}, 1)));
    om[v] = c;
  }
  return om;
}

}  // namespace skeletal
