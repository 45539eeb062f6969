#include <doctest.h>

#include <algorithm>

#include "acthom/error.hpp"
#include "acthom/persistence.hpp"
#include "oracles.hpp"

using namespace acthom;

namespace {

FiltrationComplex triangle_boundary(bool filled) {
  std::vector<Simplex> s{Simplex::vertex(0), Simplex::vertex(1), Simplex::vertex(2),
                         Simplex::edge(0, 1, 1.0), Simplex::edge(1, 2, 1.0),
                         Simplex::edge(0, 2, 1.0)};
  if (filled) s.push_back(Simplex::triangle(0, 1, 2, 2.0));
  return FiltrationComplex(s);
}

std::vector<double> scales_of(const FiltrationComplex& f) {
  std::vector<double> t{-1.0};
  for (const auto& s : f.simplices()) t.push_back(s.value);
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  t.push_back(t.back() + 1.0);
  return t;
}

}  // namespace

TEST_CASE("persistence examples") {
  SUBCASE("isolated vertices") {
    const FiltrationComplex f({Simplex::vertex(0), Simplex::vertex(1), Simplex::vertex(2)});
    const auto d = compute_persistence(f);
    CHECK(d.count(0) == 3);
    for (const auto& p : d.in_dim(0)) CHECK(p == PersistencePair{0, 0.0, kInfinity});
  }
  SUBCASE("triangle boundary") {
    const auto d = compute_persistence(triangle_boundary(false));
    CHECK(d.in_dim(1) == std::vector<PersistencePair>{{1, 1.0, kInfinity}});
    CHECK(d.in_dim(0) == std::vector<PersistencePair>{{0, 0.0, 1.0}, {0, 0.0, 1.0}, {0, 0.0, kInfinity}});
  }
  SUBCASE("filled triangle") {
    const auto d = compute_persistence(triangle_boundary(true));
    CHECK(d.in_dim(1) == std::vector<PersistencePair>{{1, 1.0, 2.0}});
  }
  SUBCASE("zero-persistence pairs are kept but flagged") {
    const FiltrationComplex f({Simplex::vertex(0), Simplex::vertex(1), Simplex::vertex(2),
                               Simplex::edge(0, 1, 1.0), Simplex::edge(1, 2, 1.0),
                               Simplex::edge(0, 2, 1.0), Simplex::triangle(0, 1, 2, 1.0)});
    const auto d = compute_persistence(f);
    REQUIRE(d.in_dim(1).size() == 1);
    CHECK(d.in_dim(1)[0].zero_persistence());
    CHECK(d.in_dim(1, false).empty());
  }
  SUBCASE("missing faces and late faces are rejected") {
    CHECK_THROWS_AS(compute_persistence(FiltrationComplex({Simplex::vertex(0), Simplex::edge(0, 1, 1.0)})),
                    InvalidFiltration);
    CHECK_THROWS_AS(compute_persistence(FiltrationComplex(
                        {Simplex::vertex(0), Simplex::vertex(1, 3.0), Simplex::edge(0, 1, 1.0)})),
                    InvalidFiltration);
  }
}

TEST_CASE("betti_at half-open convention") {
  PersistenceDiagram d;
  CHECK(betti_at(d, 1, 0.0) == 0);
  d.pairs.push_back({1, 1.0, 2.0});
  CHECK(betti_at(d, 1, 1.5) == 1);
  CHECK(betti_at(d, 1, 2.0) == 0);
  CHECK(betti_at(d, 1, 1.0) == 1);
}

TEST_CASE("persistence equals dense Z/2 ranks") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto f = oracle::random_filtration(10, seed);
    REQUIRE_NOTHROW(f.validate());
    const auto d = compute_persistence(f);
    CHECK(d.count(0) == f.count(0));
    std::size_t finite1 = 0;
    for (const auto& p : d.in_dim(1)) finite1 += !p.essential();
    CHECK(finite1 <= f.count(2));
    for (double t : scales_of(f)) {
      const auto want = oracle::dense_betti(f, t);
      CHECK(betti_at(d, 0, t) == want.b0);
      CHECK(betti_at(d, 1, t) == want.b1);
    }
  }
}

TEST_CASE("union-find beta_0 equals the diagram") {
  SplitMix64 rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto f = oracle::random_filtration(10, 1000 + static_cast<std::uint64_t>(trial) / 10);
    const double t = rng.uniform(-0.5, 4.0);
    CHECK(betti0_unionfind(f, t) == betti_at(compute_persistence(f), 0, t));
  }
  CHECK(betti0_unionfind(triangle_boundary(false), 0.5) == 3);
  CHECK(betti0_unionfind(triangle_boundary(false), 1.0) == 1);
}

TEST_CASE("diagram invariant to reordering equal simplices") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto f = oracle::random_filtration(9, seed + 300);
    auto shuffled = f.simplices();
    // Relabel vertices in reverse so ties resolve in a different order.
    Vertex top = 0;
    for (const auto& s : shuffled) top = std::max(top, s.v[s.count - 1]);
    for (auto& s : shuffled) {
      for (int k = 0; k < s.count; ++k) s.v[k] = top - s.v[k];
      std::sort(s.v.begin(), s.v.begin() + s.count);
    }
    const auto a = compute_persistence(f);
    const auto b = compute_persistence(FiltrationComplex(shuffled));
    CHECK(a.in_dim(0) == b.in_dim(0));
    CHECK(a.in_dim(1) == b.in_dim(1));
  }
}

TEST_CASE("edge components and betti windows") {
  const FiltrationComplex f({Simplex::vertex(0), Simplex::vertex(1), Simplex::vertex(2),
                             Simplex::vertex(3), Simplex::edge(0, 1, 1.0), Simplex::edge(2, 3, 2.0),
                             Simplex::edge(1, 2, 3.0)});
  CHECK(edge_component_count(f, 0.5) == 0);
  CHECK(edge_component_count(f, 1.0) == 1);
  CHECK(edge_component_count(f, 2.0) == 2);
  CHECK(edge_component_count(f, 3.0) == 1);
  const auto d = compute_persistence(f);
  const auto w = betti_windows(d, 0, 2);
  REQUIRE(w.size() == 1);
  CHECK(w[0].lo == 2.0);
  CHECK(w[0].hi == 3.0);
  const auto w1 = betti_windows(compute_persistence(triangle_boundary(true)), 1, 1);
  REQUIRE(w1.size() == 1);
  CHECK(w1[0].lo == 1.0);
  CHECK(w1[0].hi == 2.0);
}

TEST_CASE("diagram json") {
  const auto d = compute_persistence(triangle_boundary(false));
  const auto text = diagram_to_json(d);
  CHECK(text.find("\"inf\"") != std::string::npos);
  const auto back = diagram_from_json(text);
  CHECK(back.in_dim(0) == d.in_dim(0, false));
  CHECK(back.in_dim(1) == d.in_dim(1, false));
  const auto parsed = diagram_from_json(R"({"dim0": [[0, "inf"]], "dim1": [[0.5, 1.5]]})");
  CHECK(parsed.in_dim(0) == std::vector<PersistencePair>{{0, 0.0, kInfinity}});
  CHECK(parsed.in_dim(1) == std::vector<PersistencePair>{{1, 0.5, 1.5}});
  CHECK_THROWS_AS(diagram_from_json(R"({"dim1": [[2, 1]]})"), ParseError);
  CHECK_THROWS_AS(diagram_from_json(R"({"dim1": [[1]]})"), ParseError);
  CHECK_THROWS_AS(diagram_from_json("[1,2"), ParseError);
}
