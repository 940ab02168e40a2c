#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "qhdim/core.hpp"
#include "qhdim/oracle.hpp"

namespace qhdim::degeneration {

struct DegenerationParams {
  Int k = 0;  // 0 < k < d
  Int b = 0;  // 0 < b < n
};

// The plane degenerates to P (the plane blown up at one point) glued to F
// along a line; L restricts to lp on P and lf on F. The hatted systems are
// the ones that also contain the double curve.
struct DegenerationSplit {
  System general;
  DegenerationParams params;
  System lp;
  System lf;
  System hat_lp;
  System hat_lf;
  Int v = 0;
  Int v_p = 0;
  Int v_f = 0;
  Int hat_v_p = 0;
  Int hat_v_f = 0;
};

// Throws std::invalid_argument for out-of-range (k, b) and std::logic_error
// if the virtual dimensions fail to add up.
DegenerationSplit split(const System& sys, DegenerationParams params);

struct SubDims {
  Int l_p = -1;
  Int l_f = -1;
  Int hat_l_p = -1;
  Int hat_l_f = -1;
};

struct L0Evaluation {
  Int l0 = -1;
  Int hat_l0 = -1;
  Int r_p = -1;
  Int r_f = -1;
  bool transversal = false;  // r_p + r_f >= d - k, so l0 = l_p + l_f - d + k
};

L0Evaluation evaluate_l0(const DegenerationSplit& s, const SubDims& dims);

// Dimension of the limit system on the degenerate fiber.
Int dim_L0(const DegenerationSplit& s, const SubDims& dims);

enum class Outcome { EmptyProved, NonSpecialProved, Inconclusive };

std::string_view to_string(Outcome outcome);

struct ProofNode {
  System system;
  Outcome outcome = Outcome::Inconclusive;
  bool dim_known = false;  // dim is the exact generic dimension
  Int dim = -1;
  std::string rule;
  std::string detail;
  std::optional<DegenerationParams> params;
  std::optional<L0Evaluation> evaluation;
  std::vector<std::string> child_roles;
  std::vector<std::shared_ptr<const ProofNode>> children;
  bool oracle_assisted = false;
};

struct Certificate {
  Outcome outcome = Outcome::Inconclusive;
  Int dim = -1;
  bool oracle_assisted = false;
  std::shared_ptr<const ProofNode> tree;
};

nlohmann::json to_json(const ProofNode& node);
nlohmann::json to_json(const Certificate& cert);

// One line per node, indented by depth.
std::string render_trace(const Certificate& cert);

class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CacheEntry {
  Outcome outcome = Outcome::Inconclusive;
  Int dim = -1;
};

// Proved outcomes keyed by memo_key; safe for concurrent use.
class CertCache {
 public:
  static constexpr int kFormatVersion = 1;

  std::optional<CacheEntry> find(const System& sys) const;
  void insert(const System& sys, CacheEntry entry);
  std::size_t size() const;

  // Returns false (and keeps the cache empty) for a missing file or another
  // format version.
  bool load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

 private:
  mutable std::shared_mutex mutex_;
  std::map<System, CacheEntry> entries_;
};

struct CertifyOptions {
  std::size_t node_budget = 100'000;
  bool allow_oracle = false;
  bool use_monotonicity = true;
  bool record_splits = false;
  oracle::OracleConfig oracle;
};

struct SplitRecord {
  DegenerationSplit split;
  SubDims dims;
  L0Evaluation evaluation;
};

// Proves emptiness or non-speciality by recursive degenerations. Not
// thread-safe; share a CertCache between instances instead.
class Certifier {
 public:
  explicit Certifier(CertifyOptions opts = {}, std::shared_ptr<CertCache> cache = nullptr);

  Certificate certify(const System& sys);

  std::size_t nodes_used() const { return nodes_; }
  const std::vector<SplitRecord>& splits() const { return splits_; }

 private:
  using NodePtr = std::shared_ptr<const ProofNode>;

  NodePtr certify_node(const System& sys);
  NodePtr prove(const System& sys);
  NodePtr resolve(const System& sys);
  NodePtr try_degeneration(const System& sys);
  std::vector<DegenerationParams> candidate_params(const System& sys) const;

  CertifyOptions opts_;
  std::shared_ptr<CertCache> cache_;
  std::map<System, NodePtr> memo_;
  std::map<System, NodePtr> oracle_memo_;
  std::vector<SplitRecord> splits_;
  std::size_t nodes_ = 0;
};

Certificate certify(const System& sys, const CertifyOptions& opts = {});

}  // namespace qhdim::degeneration
