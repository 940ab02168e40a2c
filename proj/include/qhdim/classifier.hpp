#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qhdim/core.hpp"
#include "qhdim/minus_one.hpp"
#include "qhdim/oracle.hpp"

namespace qhdim::classifier {

// One row of the list of (-1)-special systems with m <= 3. `params` is 0 for
// a fixed tuple, 1 for a family in e, 2 for a family in (d, e).
struct SpecialTableEntry {
  std::string_view pattern;
  std::string_view constraint;
  std::string_view v_formula;
  std::string_view l_formula;
  int params = 0;
};

std::span<const SpecialTableEntry> special_table();

struct TableMatch {
  std::size_t entry = 0;
  System form;  // the equivalent tuple that matched
  Int d_param = 0;
  Int e_param = 0;
  Int v = 0;
  Int l = 0;
  std::optional<minus_one::SpecialDecomposition> decomposition;
};

// Matches this exact tuple against one entry.
std::optional<TableMatch> match_entry(std::size_t entry, const System& form);

// Every system of the entry with degree <= d_max.
std::vector<System> instantiate(std::size_t entry, Int d_max);

// Tries every equivalent form with m <= 3; throws std::invalid_argument when
// no such form exists and std::logic_error when two matches disagree on l.
std::optional<TableMatch> lookup_special_table(const System& sys, bool with_decomposition = true);

// True when some equivalent form has m <= 3.
bool in_classified_range(const System& sys);

// Generic dimension: proved for m <= 3 and in the closed-form regimes,
// otherwise predicted from (-1)-curve fixed parts and marked Conjectural.
DimensionResult dimension(const System& sys);

std::string render_qh_class_table(const std::vector<minus_one::MinusOneClass>& classes);
std::string render_configuration_table(const std::vector<minus_one::MinusOneConfiguration>& configs);
std::string render_special_table();

struct SweepOptions {
  Int d_max = 12;
  Int n_max = 12;
  Int m_min = 1;
  Int m_max = 3;
  oracle::OracleConfig oracle;
  bool certify = false;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct SweepMismatch {
  System sys;
  std::string kind;
  Int expected = 0;
  Int measured = 0;
};

struct SweepReport {
  std::size_t cells = 0;
  std::size_t special = 0;
  std::size_t certified_empty = 0;
  std::size_t certified_nonspecial = 0;
  std::size_t certify_inconclusive = 0;
  std::vector<SweepMismatch> mismatches;
  double seconds = 0;
};

nlohmann::json to_json(const SweepReport& report);

// Theory against oracle over every (d, m0, n, m) in range with m0 <= d.
SweepReport verify_sweep(const SweepOptions& opts);

}  // namespace qhdim::classifier
