#include <map>
#include <sstream>

#include "../fixtures.hpp"
#include "doctest.h"
#include "skeletal/datum_io.hpp"
#include "skeletal/steenbrink.hpp"

using namespace skeletal;

namespace {

const char* stems[] = {"i3", "i5", "path4", "point", "tetra", "icosa", "mumford3"};

BettiTable padded(BettiTable t, std::size_t width) {
  for (auto& r : t) {
    while (r.size() > width && r.back() == 0) r.pop_back();
    r.resize(std::max(r.size(), width), 0);
  }
  return t;
}

}  // namespace

TEST_CASE("Lambda and row tables match the frozen oracle values") {
  for (std::string stem : stems) {
    CAPTURE(stem);
    StrataModel m(to_degeneration(load_datum(fixtures::data(stem + ".json"))));
    LambdaSheaf l(m);
    BettiTable lam = parse_betti_tsv(fixtures::slurp(fixtures::golden(stem + "_lambda.tsv")));
    BettiTable rows = parse_betti_tsv(fixtures::slurp(fixtures::golden(stem + "_rows.tsv")));
    REQUIRE(!lam.empty());
    std::size_t w = lam[0].size();
    CHECK(padded(l.betti_table(), w) == lam);
    auto rep = theorem_a_check(l);
    CHECK(padded(rep.rows, rows[0].size()) == rows);
    CHECK(padded(rep.lambda, w) == lam);
  }
}

TEST_CASE("N ranks match the frozen oracle values") {
  for (std::string stem : stems) {
    CAPTURE(stem);
    StrataModel m(to_degeneration(load_datum(fixtures::data(stem + ".json"))));
    LambdaSheaf l(m);
    KResolution kr(l);
    std::istringstream in(fixtures::slurp(fixtures::golden(stem + "_nranks.tsv")));
    std::string header;
    std::getline(in, header);
    REQUIRE(header == "p\tq\trank");
    int p, q;
    std::size_t r;
    std::size_t seen = 0;
    std::map<int, std::vector<std::vector<std::size_t>>> by_p;
    while (in >> p >> q >> r) {
      if (!by_p.count(p)) by_p[p] = {snake_n_ranks(l, p), kcomplex_n_ranks(kr, p), row_n_ranks(m, p)};
      for (const auto& route : by_p[p]) CHECK(route.at(q) == r);
      ++seen;
    }
    CHECK(seen == static_cast<std::size_t>(m.n() * (m.n() + 1)));
  }
}
