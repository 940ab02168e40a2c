#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qhdim/core.hpp"
#include "qhdim/cremona.hpp"

namespace qhdim::oracle {

inline constexpr std::uint64_t kMersenne31 = 2147483647;

struct OracleConfig {
  std::uint64_t prime = kMersenne31;  // must be prime and below 2^32
  int trials = 3;
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
  bool parallel_trials = true;
};

nlohmann::json to_json(const OracleConfig& cfg);

struct InterpolationProblem {
  Int degree = 0;
  std::vector<Int> multiplicities;  // one entry per point

  static InterpolationProblem from_system(const System& sys);
  static InterpolationProblem from_sequence(const cremona::MultiplicitySequence& seq);

  Int rows() const;
  Int cols() const;
};

struct AffinePoint {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
};

// Dense row-major matrix over F_p.
struct ModMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint32_t> data;

  std::uint32_t* row(std::size_t r) { return data.data() + r * cols; }
  const std::uint32_t* row(std::size_t r) const { return data.data() + r * cols; }
};

bool is_prime(std::uint64_t p);

// Rows are the Taylor coefficients at each point of every monomial x^a y^b,
// a + b <= d, of total order below the point's multiplicity.
ModMatrix interpolation_matrix(const InterpolationProblem& problem,
                               std::span<const AffinePoint> points, std::uint64_t prime);

// Fraction-free elimination; the matrix is consumed.
Int rank_mod_p(ModMatrix matrix, std::uint64_t prime);

// Projective dimension of the system through the given points.
Int dim_at_points(const InterpolationProblem& problem, std::span<const AffinePoint> points,
                  std::uint64_t prime);

// Points used by trial `trial`; fixed by (seed, trial).
std::vector<AffinePoint> sample_points(std::size_t count, std::uint64_t prime, std::uint64_t seed,
                                       int trial);

DimensionResult measure_dim(const InterpolationProblem& problem, const OracleConfig& cfg = {});
DimensionResult measure_dim(const System& sys, const OracleConfig& cfg = {});
DimensionResult measure_dim(const cremona::MultiplicitySequence& seq, const OracleConfig& cfg = {});

struct Speciality {
  Int dim = -1;
  Int e = -1;
  bool special = false;
};

Speciality measure_speciality(const System& sys, const OracleConfig& cfg = {});

}  // namespace qhdim::oracle
