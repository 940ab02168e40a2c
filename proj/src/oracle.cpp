#include "qhdim/oracle.hpp"

#include <algorithm>
#include <future>
#include <random>
#include <stdexcept>

namespace qhdim::oracle {

namespace {

// a*b + c*d mod p for reduced operands.
struct MersenneReducer {
  static std::uint64_t combine(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d,
                               std::uint64_t /*p*/) {
    std::uint64_t x = a * b + c * d;  // < 2^63
    x = (x & kMersenne31) + (x >> 31);
    x = (x & kMersenne31) + (x >> 31);
    return x >= kMersenne31 ? x - kMersenne31 : x;
  }
};

struct GenericReducer {
  static std::uint64_t combine(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d,
                               std::uint64_t p) {
    const std::uint64_t t = a * b % p + c * d % p;
    return t >= p ? t - p : t;
  }
};

template <class Reducer>
Int eliminate(ModMatrix& a, std::uint64_t p) {
  const std::size_t rows = a.rows;
  const std::size_t cols = a.cols;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && a.row(pivot)[c] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) std::swap_ranges(a.row(pivot), a.row(pivot) + cols, a.row(rank));
    const std::uint32_t* prow = a.row(rank);
    const std::uint64_t piv = prow[c];
    for (std::size_t r = rank + 1; r < rows; ++r) {
      std::uint32_t* row = a.row(r);
      const std::uint64_t f = row[c];
      if (f == 0) continue;
      const std::uint64_t neg_f = p - f;
      row[c] = 0;
      for (std::size_t j = c + 1; j < cols; ++j) {
        row[j] = static_cast<std::uint32_t>(Reducer::combine(piv, row[j], neg_f, prow[j], p));
      }
    }
    ++rank;
  }
  return static_cast<Int>(rank);
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a * b % p; }

void check_prime(std::uint64_t prime, Int degree) {
  if (prime >= (std::uint64_t{1} << 32) || !is_prime(prime)) {
    throw std::invalid_argument("oracle: modulus " + std::to_string(prime) +
                                " is not a prime below 2^32");
  }
  if (degree >= 0 && prime <= static_cast<std::uint64_t>(degree)) {
    throw std::invalid_argument("oracle: prime " + std::to_string(prime) +
                                " must exceed the degree " + std::to_string(degree));
  }
}

}  // namespace

nlohmann::json to_json(const OracleConfig& cfg) {
  return {{"prime", cfg.prime}, {"trials", cfg.trials}, {"seed", cfg.seed}};
}

InterpolationProblem InterpolationProblem::from_system(const System& sys) {
  InterpolationProblem out{sys.d(), {}};
  if (sys.m0() > 0) out.multiplicities.push_back(sys.m0());
  out.multiplicities.insert(out.multiplicities.end(), static_cast<std::size_t>(sys.n()), sys.m());
  return out;
}

InterpolationProblem InterpolationProblem::from_sequence(const cremona::MultiplicitySequence& seq) {
  if (!seq.effective()) throw std::invalid_argument("oracle: sequence " + seq.str() + " is not effective");
  InterpolationProblem out{seq.degree, {}};
  for (Int x : seq.mults) {
    if (x > 0) out.multiplicities.push_back(x);
  }
  return out;
}

Int InterpolationProblem::rows() const {
  Int r = 0;
  for (Int x : multiplicities) r += x * (x + 1) / 2;
  return r;
}

Int InterpolationProblem::cols() const { return degree < 0 ? 0 : (degree + 1) * (degree + 2) / 2; }

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t q = 2; q * q <= p; ++q) {
    if (p % q == 0) return false;
  }
  return true;
}

ModMatrix interpolation_matrix(const InterpolationProblem& problem,
                               std::span<const AffinePoint> points, std::uint64_t prime) {
  const Int d = problem.degree;
  if (d < 0) throw std::invalid_argument("interpolation_matrix: negative degree");
  if (points.size() != problem.multiplicities.size()) {
    throw std::invalid_argument("interpolation_matrix: one point per multiplicity required");
  }
  const auto n1 = static_cast<std::size_t>(d + 1);

  // binom[a][i] mod p for a <= d.
  std::vector<std::uint64_t> binom(n1 * n1, 0);
  for (std::size_t a = 0; a < n1; ++a) {
    binom[a * n1] = 1;
    for (std::size_t i = 1; i <= a; ++i) {
      binom[a * n1 + i] = (binom[(a - 1) * n1 + i - 1] + (i < a ? binom[(a - 1) * n1 + i] : 0)) % prime;
    }
  }

  ModMatrix mat;
  mat.rows = static_cast<std::size_t>(problem.rows());
  mat.cols = static_cast<std::size_t>(problem.cols());
  mat.data.assign(mat.rows * mat.cols, 0);

  std::vector<std::uint64_t> px(n1), py(n1);
  std::size_t r = 0;
  for (std::size_t pt = 0; pt < points.size(); ++pt) {
    px[0] = py[0] = 1 % prime;
    for (std::size_t t = 1; t < n1; ++t) {
      px[t] = mulmod(px[t - 1], points[pt].x % prime, prime);
      py[t] = mulmod(py[t - 1], points[pt].y % prime, prime);
    }
    const Int mult = problem.multiplicities[pt];
    for (Int order = 0; order < mult; ++order) {
      for (Int i = order; i >= 0; --i) {
        const Int j = order - i;
        std::uint32_t* row = mat.row(r++);
        if (order > d) continue;
        std::size_t col = 0;
        for (Int a = 0; a <= d; ++a) {
          for (Int b = 0; a + b <= d; ++b, ++col) {
            if (a < i || b < j) continue;
            std::uint64_t v = mulmod(binom[a * n1 + i], binom[b * n1 + j], prime);
            v = mulmod(v, mulmod(px[a - i], py[b - j], prime), prime);
            row[col] = static_cast<std::uint32_t>(v);
          }
        }
      }
    }
  }
  return mat;
}

Int rank_mod_p(ModMatrix matrix, std::uint64_t prime) {
  if (prime == kMersenne31) return eliminate<MersenneReducer>(matrix, prime);
  return eliminate<GenericReducer>(matrix, prime);
}

Int dim_at_points(const InterpolationProblem& problem, std::span<const AffinePoint> points,
                  std::uint64_t prime) {
  if (problem.degree < 0) return -1;
  check_prime(prime, problem.degree);
  const Int rank = rank_mod_p(interpolation_matrix(problem, points, prime), prime);
  return problem.cols() - rank - 1;
}

std::vector<AffinePoint> sample_points(std::size_t count, std::uint64_t prime, std::uint64_t seed,
                                       int trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial)};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<std::uint64_t> coord(0, prime - 1);
  std::vector<AffinePoint> pts(count);
  for (auto& p : pts) {
    p.x = coord(rng);
    p.y = coord(rng);
  }
  return pts;
}

DimensionResult measure_dim(const InterpolationProblem& problem, const OracleConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("oracle: trials must be at least 1");
  for (Int x : problem.multiplicities) {
    if (x < 0) throw std::invalid_argument("oracle: negative multiplicity");
  }
  check_prime(cfg.prime, problem.degree);
  nlohmann::json cert = to_json(cfg);
  cert["rows"] = problem.rows();
  cert["cols"] = problem.cols();
  if (problem.degree < 0) return {-1, Status::OracleMeasured, cert};

  auto run = [&](int trial) {
    const auto pts = sample_points(problem.multiplicities.size(), cfg.prime, cfg.seed, trial);
    return dim_at_points(problem, pts, cfg.prime);
  };
  std::vector<Int> per_trial(static_cast<std::size_t>(cfg.trials));
  if (cfg.parallel_trials && cfg.trials > 1) {
    std::vector<std::future<Int>> jobs;
    for (int t = 0; t < cfg.trials; ++t) jobs.push_back(std::async(std::launch::async, run, t));
    for (int t = 0; t < cfg.trials; ++t) per_trial[static_cast<std::size_t>(t)] = jobs[static_cast<std::size_t>(t)].get();
  } else {
    for (int t = 0; t < cfg.trials; ++t) per_trial[static_cast<std::size_t>(t)] = run(t);
  }
  cert["per_trial"] = per_trial;
  return {*std::min_element(per_trial.begin(), per_trial.end()), Status::OracleMeasured, cert};
}

DimensionResult measure_dim(const System& sys, const OracleConfig& cfg) {
  auto r = measure_dim(InterpolationProblem::from_system(sys), cfg);
  r.certificate["system"] = sys.str();
  return r;
}

DimensionResult measure_dim(const cremona::MultiplicitySequence& seq, const OracleConfig& cfg) {
  auto r = measure_dim(InterpolationProblem::from_sequence(seq), cfg);
  r.certificate["sequence"] = seq.str();
  return r;
}

Speciality measure_speciality(const System& sys, const OracleConfig& cfg) {
  const Int dim = measure_dim(sys, cfg).dim;
  const Int e = expected_dim(sys);
  return {dim, e, dim > e};
}

}  // namespace qhdim::oracle
