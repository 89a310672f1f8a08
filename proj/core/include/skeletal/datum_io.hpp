#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "skeletal/linalg.hpp"
#include "skeletal/steenbrink.hpp"
#include "skeletal/strata.hpp"

namespace skeletal {

enum class DatumKind { generic, kulikov_surface, curve, mumford_torus };

std::string kind_name(DatumKind k);

// in-memory image of a datum file; fields that were absent stay empty
struct DatumFile {
  DatumKind kind = DatumKind::generic;
  int dimension = 0;
  std::map<Vertex, long> multiplicity;
  std::vector<Face> faces;  // maximal faces, each sorted
  bool has_mode = false;
  RelationMode mode = RelationMode::pairing;
  std::map<std::pair<Face, int>, std::vector<VecQ>> relations;
  std::map<std::pair<Face, Vertex>, VecQ> self_classes;
  std::map<std::pair<Vertex, Vertex>, long> d;
  int k = 0;  // mumford_torus only

  friend bool operator==(const DatumFile&, const DatumFile&) = default;
};

// line and column are 1-based; 0 when the location is unknown
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

Q parse_rational(const std::string& s);  // "num/den" or "num"; throws std::invalid_argument
std::string rational_string(const Q& q);  // always "num/den"

DatumFile parse_datum(const std::string& text);
DatumFile load_datum(const std::string& path);
std::string dump_datum(const DatumFile& f);
void save_datum(const std::string& path, const DatumFile& f);

DatumFile datum_from_surface(const AffineSurfaceDatum& s);
bool is_surface(const DatumFile& f);  // kulikov_surface or mumford_torus
AffineSurfaceDatum to_surface(const DatumFile& f);
// dispatches on kind; surface kinds go through build_kulikov_surface
DegenerationDatum to_degeneration(const DatumFile& f);

// full validation used by the CLI; never throws on bad data
struct ValidationResult {
  bool ok = true;
  std::vector<CheckFailure> violations;
};
ValidationResult validate_file(const DatumFile& f);
std::string violations_json(const ValidationResult& v);

using BettiTable = std::vector<std::vector<std::size_t>>;  // [p][q]
std::string betti_tsv(const BettiTable& t);
std::string betti_json(const BettiTable& t);
BettiTable parse_betti_tsv(const std::string& text);

// {"omega": [{"vertex": i, "class": ["a/b", ...]}]}, vectors over the 'H^2(Y_i) basis
Omega load_omega(const std::string& path, const StrataModel& m);

}  // namespace skeletal
