// Writes the golden tables under tests/golden from the dense oracle.
// usage: make_golden <data dir> <golden dir>
// Only rerun after checking a diff by hand: the files are the reference.
#include <algorithm>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "skeletal/datum_io.hpp"
#include "skeletal/sheaf.hpp"
#include "skeletal/steenbrink.hpp"

using namespace skeletal;

namespace {

using Table = std::vector<std::vector<std::size_t>>;

// at least n + 1 columns; wider only if some row has cohomology past q = n
void write_table(const std::string& path, Table t, int n) {
  std::size_t width = static_cast<std::size_t>(n) + 1;
  for (auto& r : t) {
    while (!r.empty() && r.back() == 0) r.pop_back();
    width = std::max(width, r.size());
  }
  std::ofstream out(path);
  out << "p";
  for (std::size_t q = 0; q < width; ++q) out << "\tq" << q;
  out << "\n";
  for (std::size_t p = 0; p < t.size(); ++p) {
    out << p;
    for (std::size_t q = 0; q < width; ++q) out << "\t" << (q < t[p].size() ? t[p][q] : 0);
    out << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: make_golden <data dir> <golden dir>\n";
    return 1;
  }
  std::string data = argv[1], gold = argv[2];
  for (std::string stem : {"i3", "i5", "path4", "point", "tetra", "icosa", "mumford3"}) {
    DatumFile f = load_datum(data + "/" + stem + ".json");
    StrataModel m(to_degeneration(f));
    LambdaSheaf l(m);
    int n = m.n();
    Table lam, rows;
    for (int p = 0; p <= n; ++p) {
      lam.push_back(oracle::betti(l.cech_complex(p)));
      rows.push_back(oracle::betti(row_complex(m, p).cx));
    }
    write_table(gold + "/" + stem + "_lambda.tsv", lam, n);
    write_table(gold + "/" + stem + "_rows.tsv", rows, n);
    std::ofstream nr(gold + "/" + stem + "_nranks.tsv");
    nr << "p\tq\trank\n";
    for (int p = 1; p <= n; ++p)
      for (int q = 0; q <= n; ++q)
        nr << p << "\t" << q << "\t"
           << oracle::connecting_rank(l.cech_complex(p - 1), l.cech_complex_a(p), l.cech_wedge(p),
                                      l.cech_quotient(p), l.cech_complex(p), static_cast<std::size_t>(q))
           << "\n";
    std::cout << stem << " done\n";
  }
  return 0;
}
