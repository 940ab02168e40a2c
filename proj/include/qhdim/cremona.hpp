#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qhdim/core.hpp"

namespace qhdim::cremona {

// (degree; m_0, m_1, ...). Entries may be negative while a class is being
// reduced; only effective sequences name actual linear systems.
struct MultiplicitySequence {
  Int degree = 0;
  std::vector<Int> mults;

  static MultiplicitySequence from_system(const System& sys);

  bool effective() const;
  Int self_intersection() const;
  Int canonical_degree() const;  // 3d - sum of multiplicities
  Int virtual_dim() const;

  // Drops zero multiplicities at indices >= 1; index 0 keeps its slot.
  MultiplicitySequence without_zeros() const;

  // Reads index 0 as p0 and requires the remaining nonzero entries to be equal.
  std::optional<System> as_system() const;

  std::string str() const;

  friend bool operator==(const MultiplicitySequence&, const MultiplicitySequence&) = default;
};

nlohmann::json to_json(const MultiplicitySequence& seq);

struct TransformResult {
  MultiplicitySequence seq;
  bool would_be_empty = false;  // 2d < mi + mj + mk
};

TransformResult quadratic_transform(const MultiplicitySequence& seq, std::size_t i, std::size_t j,
                                    std::size_t k);

// d = q * divisor + mu with 0 <= mu < divisor, n = 2h + eps.
struct LargeM0Form {
  Int q = 0;
  Int mu = 0;
  Int h = 0;
  Int eps = 0;
};

LargeM0Form large_m0_form(Int d, Int divisor, Int n);

// m0 = d - m, 2 <= m <= d: closed form in (q, mu, h, eps).
DimensionResult dim_m0_eq_d_minus_m(const System& sys);

// m0 = d - m, 0 <= m <= d: the same value by repeated Cremona steps
// (d, n) -> (d - m, n - 2) down to a base case.
DimensionResult dim_m0_eq_d_minus_m_recursive(const System& sys);

// m0 >= d - m + 1: split off the n lines through p0, k = m0 - d + m times each.
DimensionResult dim_m0_ge_d_minus_m(const System& sys);

// m0 = d - m - 1, 2 <= m <= d - 1.
DimensionResult dim_m0_eq_d_minus_m_minus_1(const System& sys);

// At most three multiple points, or only simple points besides p0.
DimensionResult dim_few_points(const System& sys);

// First closed form that applies to this exact tuple, if any.
std::optional<DimensionResult> closed_form_dim(const System& sys);

// Tries every equivalent form; throws std::logic_error if two forms disagree.
std::optional<DimensionResult> closed_form_dim_any(const System& sys);

}  // namespace qhdim::cremona
