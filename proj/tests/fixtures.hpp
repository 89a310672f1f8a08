#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "skeletal/datum_io.hpp"
#include "skeletal/strata.hpp"

#ifndef SKELETAL_DATA_DIR
#define SKELETAL_DATA_DIR "data"
#endif
#ifndef SKELETAL_GOLDEN_DIR
#define SKELETAL_GOLDEN_DIR "tests/golden"
#endif

namespace fixtures {

inline std::string data(const std::string& name) { return std::string(SKELETAL_DATA_DIR) + "/" + name; }
inline std::string golden(const std::string& name) { return std::string(SKELETAL_GOLDEN_DIR) + "/" + name; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline skeletal::DegenerationDatum curve_cycle(int m) {
  auto g = skeletal::cycle_graph(m);
  return skeletal::build_curve(g, skeletal::unit_multiplicities(g));
}

inline skeletal::DegenerationDatum curve_path(int m) {
  auto g = skeletal::path_graph(m);
  return skeletal::build_curve(g, skeletal::unit_multiplicities(g));
}

struct Named {
  std::string name;
  skeletal::DegenerationDatum datum;
};

// every shipped datum file that validates
inline std::vector<std::string> valid_files() {
  return {"i3.json", "i5.json", "path4.json", "point.json", "tetra.json", "icosa.json", "mumford3.json"};
}

inline std::vector<std::string> surface_files() { return {"tetra.json", "icosa.json", "mumford3.json"}; }

}  // namespace fixtures
