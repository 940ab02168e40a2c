#include <doctest.h>

#include <algorithm>
#include <array>
#include <set>

#include "qhdim/core.hpp"
#include "qhdim/oracle.hpp"

using namespace qhdim;

TEST_SUITE("core") {

TEST_CASE("systems normalize empty point sets and reject bad input") {
  CHECK(System(3, 1, 0, 4) == System(3, 1));
  CHECK(System(3, 1, 4, 0) == System(3, 1));
  CHECK(System(3, 1, 4, 0).n() == 0);
  CHECK(System(5, 2, 3, 1).str() == "L(5,2,3,1)");
  CHECK(System(5, 2).str() == "L(5,2)");
  CHECK_THROWS_AS(System(-1, 0), std::invalid_argument);
  CHECK_THROWS_AS(System(2, 0, -1, 1), std::invalid_argument);
  CHECK_THROWS_AS(System(kParameterCap + 1, 0), std::invalid_argument);
}

TEST_CASE("invariants of listed systems") {
  CHECK(invariants(System(4, 0, 5, 2)).v == -1);
  CHECK(invariants(System(6, 2, 4, 3)).v == 0);
  CHECK(invariants(System(4, 0, 2, 3)).v == 2);
  CHECK(invariants(System(1, 0)).v == 2);
  const auto line = invariants(System(1, 1, 1, 1));
  CHECK(line.self_int == -1);
  CHECK(line.genus == 0);
  CHECK(line.v == 0);
  CHECK(invariants(System(6, 0, 5, 3)).e == -1);
  CHECK(expected_dim(System(6, 0, 5, 3)) == -1);
}

TEST_CASE("v = L^2 - g + 1 and the genus formula over a sweep") {
  for (Int d = 0; d <= 25; ++d) {
    for (Int m0 = 0; m0 <= d + 2; ++m0) {
      for (Int n = 0; n <= 9; ++n) {
        for (Int m = 0; m <= 6; ++m) {
          const auto inv = invariants(System(d, m0, n, m));
          const Int nn = m == 0 ? 0 : n;
          const Int mm = n == 0 ? 0 : m;
          CHECK(inv.v == inv.self_int - inv.genus + 1);
          CHECK(2 * inv.genus - 2 == d * (d - 3) - m0 * (m0 - 1) - nn * mm * (mm - 1));
          CHECK(inv.e == std::max<Int>(-1, inv.v));
        }
      }
    }
  }
}

TEST_CASE("intersection numbers") {
  CHECK(intersect(System(27, 17, 9, 7), System(12, 8, 9, 3), 9) == -1);
  CHECK(intersect(System(1, 1, 1, 1), System(1, 1, 1, 1), 1) == -1);
  CHECK(intersect(System(6, 3, 7, 2), System(6, 3, 7, 2), 7) == -1);
  CHECK_THROWS_AS(intersect(System(6, 3, 7, 2), System(6, 3, 7, 2), 8), std::invalid_argument);
}

TEST_CASE("simple points impose independent conditions") {
  CHECK(multiplicity_one(5, 2) == 3);
  CHECK(multiplicity_one(2, 5) == -1);
  CHECK(multiplicity_one(5, 5) == 0);
}

TEST_CASE("monomial count at the coordinate points") {
  CHECK(trinomial_dim(4, 1, 3, 3) == 2);
  for (Int d = 0; d <= 8; ++d) CHECK(trinomial_dim(d, 0, 0, 0) == d * (d + 3) / 2);
  CHECK(trinomial_dim(6, 4, 4, 4) == 0);
  CHECK(trinomial_dim(3, 4, 0, 0) == -1);
}

TEST_CASE("monomial count is symmetric and matches the oracle") {
  oracle::OracleConfig cfg;
  for (Int d = 0; d <= 8; ++d) {
    for (Int a = 0; a <= d + 1; ++a) {
      for (Int b = 0; b <= a; ++b) {
        for (Int c = 0; c <= b; ++c) {
          std::array<Int, 3> p{a, b, c};
          const Int base = trinomial_dim(d, a, b, c);
          std::sort(p.begin(), p.end());
          do {
            CHECK(trinomial_dim(d, p[0], p[1], p[2]) == base);
          } while (std::next_permutation(p.begin(), p.end()));
          const oracle::InterpolationProblem prob{d, {a, b, c}};
          CHECK(oracle::measure_dim(prob, cfg).dim == base);
        }
      }
    }
  }
}

TEST_CASE("equivalent forms are closed and share invariants") {
  for (Int d = 0; d <= 10; ++d) {
    for (Int m0 = 0; m0 <= d; ++m0) {
      for (Int n = 0; n <= 6; ++n) {
        for (Int m = 0; m <= 4; ++m) {
          const System sys(d, m0, n, m);
          const auto forms = equivalent_forms(sys);
          REQUIRE(!forms.empty());
          CHECK(std::is_sorted(forms.begin(), forms.end()));
          CHECK(std::find(forms.begin(), forms.end(), sys) != forms.end());
          const auto inv = invariants(sys);
          for (const auto& f : forms) {
            const auto fi = invariants(f);
            CHECK(fi.v == inv.v);
            CHECK(fi.self_int == inv.self_int);
            CHECK(fi.genus == inv.genus);
            CHECK(equivalent_forms(f) == forms);
          }
        }
      }
    }
  }
  const auto forms = equivalent_forms(System(1, 1, 1, 1));
  CHECK(forms == std::vector<System>{System(1, 0, 2, 1), System(1, 1, 1, 1)});
  CHECK(memo_key(System(3, 1, 1, 2)) == System(3, 2, 1, 1));
  CHECK(memo_key(System(3, 2, 1, 1)) == System(3, 2, 1, 1));
}

TEST_CASE("status names") {
  CHECK(to_string(Status::NonSpecialProved) == "NonSpecialProved");
  CHECK(to_string(Status::SpecialProved) == "SpecialProved");
  CHECK(to_string(Status::Conjectural) == "Conjectural");
  CHECK(to_string(Status::OracleMeasured) == "OracleMeasured");
  CHECK(to_json(System(4, 0, 5, 2)) == nlohmann::json{{"d", 4}, {"m0", 0}, {"n", 5}, {"m", 2}});
}

}
