#include <doctest.h>

#include <set>

#include "qhdim/oracle.hpp"

using namespace qhdim;

TEST_SUITE("oracle") {

TEST_CASE("measured dimensions of small systems") {
  CHECK(oracle::measure_dim(System(1, 0, 2, 1)).dim == 0);
  CHECK(oracle::measure_dim(System(6, 0, 5, 3)).dim == 0);
  CHECK(oracle::measure_dim(System(2, 0, 2, 2)).dim == 0);
  CHECK(oracle::measure_dim(System(4, 0, 5, 2)).dim == 0);
  CHECK(oracle::measure_dim(System(4, 0, 2, 3)).dim == 3);
  CHECK(oracle::measure_dim(System(5, 0, 4, 2)).dim == 8);
  CHECK(oracle::measure_dim(System(7, 5, 4, 2)).dim == 8);
  CHECK(oracle::measure_dim(System(0, 1)).dim == -1);
  CHECK(oracle::measure_dim(System(0, 0)).dim == 0);
  const auto r = oracle::measure_dim(System(6, 0, 5, 3));
  CHECK(r.status == Status::OracleMeasured);
  CHECK(r.certificate["prime"] == oracle::kMersenne31);
  CHECK(r.certificate["trials"] == 3);
}

TEST_CASE("speciality") {
  const auto a = oracle::measure_speciality(System(4, 0, 5, 2));
  CHECK(a.special);
  const auto b = oracle::measure_speciality(System(3, 0, 3, 2));
  CHECK(b.dim == 0);
  CHECK(b.e == 0);
  CHECK_FALSE(b.special);
  const auto c = oracle::measure_speciality(System(5, 0, 1, 1));
  CHECK(c.dim == 19);
  CHECK_FALSE(c.special);
}

TEST_CASE("row count identity") {
  for (Int d = 0; d <= 8; ++d) {
    for (Int m0 = 0; m0 <= d + 2; ++m0) {
      for (Int n = 0; n <= 5; ++n) {
        for (Int m = 0; m <= d + 2; ++m) {
          const System s(d, m0, n, m);
          const auto prob = oracle::InterpolationProblem::from_system(s);
          const auto pts = oracle::sample_points(prob.multiplicities.size(), oracle::kMersenne31, 1, 0);
          const auto mat = oracle::interpolation_matrix(prob, pts, oracle::kMersenne31);
          const Int rows = s.m0() * (s.m0() + 1) / 2 + s.n() * s.m() * (s.m() + 1) / 2;
          CHECK(static_cast<Int>(mat.rows) == rows);
          CHECK(prob.rows() == rows);
          CHECK(static_cast<Int>(mat.cols) == (d + 1) * (d + 2) / 2);
        }
      }
    }
  }
}

TEST_CASE("determinism and seed sensitivity of sampling") {
  const auto a = oracle::sample_points(6, oracle::kMersenne31, 42, 0);
  const auto b = oracle::sample_points(6, oracle::kMersenne31, 42, 0);
  const auto c = oracle::sample_points(6, oracle::kMersenne31, 42, 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].x == b[i].x);
    CHECK(a[i].y == b[i].y);
    CHECK(a[i].x < oracle::kMersenne31);
  }
  CHECK((a[0].x != c[0].x || a[0].y != c[0].y));
  oracle::OracleConfig cfg;
  cfg.seed = 5;
  const auto r1 = oracle::measure_dim(System(9, 3, 7, 3), cfg);
  cfg.parallel_trials = false;
  const auto r2 = oracle::measure_dim(System(9, 3, 7, 3), cfg);
  CHECK(r1.certificate == r2.certificate);
}

TEST_CASE("translation invariance") {
  const std::uint64_t p = oracle::kMersenne31;
  for (Int d = 2; d <= 9; ++d) {
    for (Int m = 2; m <= 3; ++m) {
      const auto prob = oracle::InterpolationProblem::from_system(System(d, d / 2, 5, m));
      auto pts = oracle::sample_points(prob.multiplicities.size(), p, 99, static_cast<int>(d));
      const Int before = oracle::dim_at_points(prob, pts, p);
      for (auto& pt : pts) {
        pt.x = (pt.x + 123456789) % p;
        pt.y = (pt.y + 987654321) % p;
      }
      CHECK(oracle::dim_at_points(prob, pts, p) == before);
    }
  }
}

TEST_CASE("rank over Z/p") {
  oracle::ModMatrix m{2, 3, {1, 2, 3, 2, 4, 6}};
  CHECK(oracle::rank_mod_p(m, 7) == 1);
  oracle::ModMatrix id{3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1}};
  CHECK(oracle::rank_mod_p(id, oracle::kMersenne31) == 3);
  oracle::ModMatrix z{2, 2, {0, 0, 0, 0}};
  CHECK(oracle::rank_mod_p(z, 5) == 0);
  // Singular only modulo 5.
  oracle::ModMatrix s{2, 2, {1, 2, 3, 1}};
  CHECK(oracle::rank_mod_p(s, 5) == 1);
  CHECK(oracle::rank_mod_p(s, 7) == 2);
}

TEST_CASE("another prime gives the same generic dimensions") {
  oracle::OracleConfig other;
  other.prime = 1000003;
  CHECK(oracle::is_prime(other.prime));
  for (Int d = 1; d <= 10; ++d) {
    for (Int n = 1; n <= 8; ++n) {
      for (Int m = 1; m <= 3; ++m) {
        const System s(d, d / 3, n, m);
        CHECK(oracle::measure_dim(s, other).dim == oracle::measure_dim(s).dim);
      }
    }
  }
}

TEST_CASE("configuration errors") {
  oracle::OracleConfig cfg;
  cfg.prime = 7;
  CHECK_THROWS_AS(oracle::measure_dim(System(7, 0, 1, 1), cfg), std::invalid_argument);
  cfg.prime = 9;
  CHECK_THROWS_AS(oracle::measure_dim(System(2, 0, 1, 1), cfg), std::invalid_argument);
  CHECK(oracle::is_prime(2));
  CHECK_FALSE(oracle::is_prime(1));
  CHECK_FALSE(oracle::is_prime(oracle::kMersenne31 + 2));
  CHECK_THROWS_AS(oracle::InterpolationProblem::from_sequence({3, {1, -1}}), std::invalid_argument);
}

TEST_CASE("more trials never raise the minimum; 3 and 10 trials agree for m <= 3, d <= 12") {
  oracle::OracleConfig three;
  oracle::OracleConfig ten;
  ten.trials = 10;
  std::size_t cells = 0;
  for (Int m = 1; m <= 3; ++m) {
    for (Int d = 0; d <= 12; ++d) {
      for (Int m0 = 0; m0 <= d; ++m0) {
        for (Int n = 1; n <= 12; ++n) {
          const System s(d, m0, n, m);
          const auto a = oracle::measure_dim(s, three);
          const auto b = oracle::measure_dim(s, ten);
          ++cells;
          CHECK(b.dim <= a.dim);
          CHECK(b.dim == a.dim);
        }
      }
    }
  }
  CHECK(cells == 3 * 91 * 12);
}

}
