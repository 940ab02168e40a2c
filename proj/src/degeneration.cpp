#include "qhdim/degeneration.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>

#include "qhdim/classifier.hpp"
#include "qhdim/cremona.hpp"

namespace qhdim::degeneration {

namespace {

Outcome proved_outcome(Int e) { return e == -1 ? Outcome::EmptyProved : Outcome::NonSpecialProved; }

std::string closed_form_detail(const nlohmann::json& cert) {
  std::string out = cert.value("rule", std::string("closed form"));
  if (cert.contains("case")) out += " (" + cert["case"].get<std::string>() + ")";
  if (cert.contains("residual") && cert["residual"].is_string()) {
    out += ", residual " + cert["residual"].get<std::string>();
  }
  return out;
}

void render(const ProofNode& node, const std::string& role, int depth, std::ostringstream& os) {
  os << std::string(static_cast<std::size_t>(depth) * 2, ' ');
  if (!role.empty()) os << role << ": ";
  os << node.system.str() << "  ";
  if (node.outcome != Outcome::Inconclusive) {
    os << to_string(node.outcome) << ", dim " << node.dim;
  } else if (node.dim_known) {
    os << "dim " << node.dim << " (special)";
  } else {
    os << "inconclusive";
  }
  os << "  [" << node.rule;
  if (!node.detail.empty()) os << ": " << node.detail;
  os << "]";
  if (node.oracle_assisted) os << " (oracle-assisted)";
  os << "\n";
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    render(*node.children[i], i < node.child_roles.size() ? node.child_roles[i] : "", depth + 1, os);
  }
}

}  // namespace

DegenerationSplit split(const System& sys, DegenerationParams params) {
  const Int d = sys.d();
  const Int n = sys.n();
  const Int k = params.k;
  const Int b = params.b;
  if (!(0 < k && k < d) || !(0 < b && b < n)) {
    throw std::invalid_argument("split: (k,b) = (" + std::to_string(k) + "," + std::to_string(b) +
                                ") out of range for " + sys.str());
  }
  DegenerationSplit s{sys, params,
                      System(d - k, sys.m0(), n - b, sys.m()),
                      System(d, d - k, b, sys.m()),
                      System(d - k - 1, sys.m0(), n - b, sys.m()),
                      System(d, d - k + 1, b, sys.m())};
  s.v = virtual_dim(sys);
  s.v_p = virtual_dim(s.lp);
  s.v_f = virtual_dim(s.lf);
  s.hat_v_p = virtual_dim(s.hat_lp);
  s.hat_v_f = virtual_dim(s.hat_lf);
  if (s.v_p + s.v_f != s.v + d - k || s.hat_v_p + s.v_f != s.v - 1 || s.v_p + s.hat_v_f != s.v - 1) {
    throw std::logic_error("virtual dimensions of the split of " + sys.str() + " do not add up");
  }
  return s;
}

L0Evaluation evaluate_l0(const DegenerationSplit& s, const SubDims& dims) {
  L0Evaluation ev;
  ev.r_p = dims.l_p - dims.hat_l_p - 1;
  ev.r_f = dims.l_f - dims.hat_l_f - 1;
  ev.hat_l0 = dims.hat_l_p + dims.hat_l_f + 1;
  const Int gap = s.general.d() - s.params.k;
  ev.transversal = ev.r_p + ev.r_f >= gap;
  ev.l0 = ev.transversal ? dims.l_p + dims.l_f - gap : ev.hat_l0;
  return ev;
}

Int dim_L0(const DegenerationSplit& s, const SubDims& dims) { return evaluate_l0(s, dims).l0; }

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::EmptyProved: return "EmptyProved";
    case Outcome::NonSpecialProved: return "NonSpecialProved";
    case Outcome::Inconclusive: return "Inconclusive";
  }
  return "?";
}

nlohmann::json to_json(const ProofNode& node) {
  nlohmann::json j{{"system", node.system.str()},
                   {"outcome", to_string(node.outcome)},
                   {"rule", node.rule}};
  if (node.dim_known || node.outcome != Outcome::Inconclusive) j["dim"] = node.dim;
  if (!node.detail.empty()) j["detail"] = node.detail;
  if (node.params) {
    j["k"] = node.params->k;
    j["b"] = node.params->b;
  }
  if (node.evaluation) {
    j["l0"] = node.evaluation->l0;
    j["r_p"] = node.evaluation->r_p;
    j["r_f"] = node.evaluation->r_f;
  }
  if (node.oracle_assisted) j["oracle_assisted"] = true;
  if (!node.children.empty()) {
    nlohmann::json kids = nlohmann::json::array();
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      nlohmann::json c = to_json(*node.children[i]);
      if (i < node.child_roles.size()) c["role"] = node.child_roles[i];
      kids.push_back(std::move(c));
    }
    j["children"] = std::move(kids);
  }
  return j;
}

nlohmann::json to_json(const Certificate& cert) {
  nlohmann::json j{{"outcome", to_string(cert.outcome)}, {"oracle_assisted", cert.oracle_assisted}};
  if (cert.outcome != Outcome::Inconclusive) j["dim"] = cert.dim;
  if (cert.tree) j["tree"] = to_json(*cert.tree);
  return j;
}

std::string render_trace(const Certificate& cert) {
  std::ostringstream os;
  if (cert.tree) render(*cert.tree, "", 0, os);
  return os.str();
}

std::optional<CacheEntry> CertCache::find(const System& sys) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(memo_key(sys));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void CertCache::insert(const System& sys, CacheEntry entry) {
  std::unique_lock lock(mutex_);
  entries_.emplace(memo_key(sys), entry);
}

std::size_t CertCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

bool CertCache::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return false;
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception&) {
    return false;
  }
  if (j.value("version", -1) != kFormatVersion || !j.contains("entries")) return false;
  std::unique_lock lock(mutex_);
  for (const auto& row : j["entries"]) {
    const System sys(row.at(0).get<Int>(), row.at(1).get<Int>(), row.at(2).get<Int>(), row.at(3).get<Int>());
    const auto name = row.at(4).get<std::string>();
    const Outcome outcome = name == "EmptyProved" ? Outcome::EmptyProved : Outcome::NonSpecialProved;
    entries_.emplace(memo_key(sys), CacheEntry{outcome, row.at(5).get<Int>()});
  }
  return true;
}

void CertCache::save(const std::filesystem::path& path) const {
  nlohmann::json rows = nlohmann::json::array();
  {
    std::shared_lock lock(mutex_);
    for (const auto& [sys, entry] : entries_) {
      rows.push_back({sys.d(), sys.m0(), sys.n(), sys.m(), to_string(entry.outcome), entry.dim});
    }
  }
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write certificate cache " + tmp);
    out << nlohmann::json{{"version", kFormatVersion}, {"entries", rows}}.dump() << "\n";
  }
  std::filesystem::rename(tmp, path);
}

Certifier::Certifier(CertifyOptions opts, std::shared_ptr<CertCache> cache)
    : opts_(std::move(opts)), cache_(cache ? std::move(cache) : std::make_shared<CertCache>()) {}

Certificate Certifier::certify(const System& sys) {
  const NodePtr node = certify_node(sys);
  Certificate cert;
  cert.outcome = node->outcome;
  cert.dim = node->outcome == Outcome::Inconclusive ? -1 : node->dim;
  cert.oracle_assisted = node->oracle_assisted;
  cert.tree = node;
  return cert;
}

Certifier::NodePtr Certifier::certify_node(const System& sys) {
  const System key = memo_key(sys);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  if (auto hit = cache_->find(key)) {
    auto node = std::make_shared<ProofNode>();
    node->system = sys;
    node->outcome = hit->outcome;
    node->dim = hit->dim;
    node->dim_known = true;
    node->rule = "certificate cache";
    memo_.emplace(key, node);
    return node;
  }
  if (++nodes_ > opts_.node_budget) {
    throw ResourceLimitError("certify: node budget of " + std::to_string(opts_.node_budget) +
                             " exhausted at " + sys.str());
  }
  NodePtr node = prove(sys);
  memo_.emplace(key, node);
  if (node->outcome != Outcome::Inconclusive && !node->oracle_assisted) {
    cache_->insert(key, {node->outcome, node->dim});
  }
  return node;
}

Certifier::NodePtr Certifier::resolve(const System& sys) {
  NodePtr node = certify_node(sys);
  if (node->dim_known || !opts_.allow_oracle) return node;
  const System key = memo_key(sys);
  if (auto it = oracle_memo_.find(key); it != oracle_memo_.end()) return it->second;
  auto measured = std::make_shared<ProofNode>();
  measured->system = sys;
  measured->dim = oracle::measure_dim(sys, opts_.oracle).dim;
  measured->dim_known = true;
  measured->rule = "oracle measurement";
  measured->oracle_assisted = true;
  oracle_memo_.emplace(key, measured);
  return measured;
}

Certifier::NodePtr Certifier::prove(const System& sys) {
  auto node = std::make_shared<ProofNode>();
  node->system = sys;
  const Int d = sys.d();
  const Int m0 = sys.m0();
  const Int n = sys.n();
  const Int m = sys.m();
  const Int e = expected_dim(sys);
  const Int v = virtual_dim(sys);
  auto finish = [&](Int dim, std::string rule, std::string detail) {
    node->dim = dim;
    node->dim_known = true;
    node->outcome = dim == e ? proved_outcome(e) : Outcome::Inconclusive;
    node->rule = std::move(rule);
    node->detail = std::move(detail);
    return node;
  };

  if (m0 > d) return finish(-1, "m0 > d", "empty");
  if (auto closed = cremona::closed_form_dim_any(sys)) {
    return finish(closed->dim, "closed form", closed_form_detail(closed->certificate));
  }
  if (classifier::in_classified_range(sys)) {
    if (auto match = classifier::lookup_special_table(sys, false)) {
      return finish(match->l, "(-1)-special list",
                    std::string(classifier::special_table()[match->entry].pattern));
    }
  }

  if (m0 == 1 && m >= 2) {
    NodePtr sub = resolve(System(d, 0, n, m));
    if (sub->dim_known && multiplicity_one(sub->dim, 1) == e) {
      node->children = {sub};
      node->child_roles = {"without p0"};
      node->oracle_assisted = sub->oracle_assisted;
      return finish(e, "multiplicity one", "a simple general point imposes one condition");
    }
  }

  if (opts_.use_monotonicity) {
    if (v <= -1 && n >= 1) {
      NodePtr sub = certify_node(System(d, m0, n - 1, m));
      if (sub->outcome == Outcome::EmptyProved) {
        node->children = {sub};
        node->child_roles = {"fewer points"};
        return finish(-1, "monotonicity", "already empty with one point fewer");
      }
    }
    if (v >= -1) {
      // A non-special system with no fewer conditions and no larger degree.
      for (Int ds = d; ds >= 0; --ds) {
        for (Int ms = std::max(m0, ds - m - 1); ms <= ds; ++ms) {
          if (ds == d && ms == m0) continue;
          const System star(ds, ms, n, m);
          const Int vs = virtual_dim(star);
          if (vs < -1) continue;
          const auto closed = cremona::closed_form_dim(star);
          if (!closed || closed->dim != vs) continue;
          auto sub = std::make_shared<ProofNode>();
          sub->system = star;
          sub->outcome = proved_outcome(vs);
          sub->dim = vs;
          sub->dim_known = true;
          sub->rule = "closed form";
          sub->detail = closed_form_detail(closed->certificate);
          node->children = {sub};
          node->child_roles = {"smaller system"};
          return finish(v, "monotonicity", "non-special with v >= -1 at lower degree or higher m0");
        }
      }
    }
  }

  if (NodePtr deg = try_degeneration(sys)) return deg;

  node->rule = "no applicable rule";
  return node;
}

std::vector<DegenerationParams> Certifier::candidate_params(const System& sys) const {
  const Int d = sys.d();
  const Int n = sys.n();
  const Int m = sys.m();
  const Int v = virtual_dim(sys);
  std::vector<DegenerationParams> out;
  auto add = [&](Int k, Int b) {
    if (!(0 < k && k < d && 0 < b && b < n)) return;
    for (const auto& p : out) {
      if (p.k == k && p.b == b) return;
    }
    out.push_back({k, b});
  };
  if (m == 2) {
    add(1, v <= -1 ? d / 2 + 1 : (d + 1) / 2);
  } else if (m == 3) {
    if (v <= -1) {
      for (Int b = d / 2; 5 * b > 2 * d; --b) {
        if (d % 4 == 0 && 2 * b == d) continue;
        add(2, b);
      }
    } else {
      const Int h = (d + 1) / 2;
      add(3, h);
      add(3, h + 1);
    }
  }
  std::vector<DegenerationParams> rest;
  for (Int k = 1; k < d; ++k) {
    for (Int b = 1; b < n; ++b) rest.push_back({k, b});
  }
  std::stable_sort(rest.begin(), rest.end(), [d](const DegenerationParams& a, const DegenerationParams& b) {
    return a.k * std::abs(2 * a.b - d) < b.k * std::abs(2 * b.b - d);
  });
  for (const auto& p : rest) add(p.k, p.b);
  return out;
}

Certifier::NodePtr Certifier::try_degeneration(const System& sys) {
  const Int e = expected_dim(sys);
  for (const DegenerationParams& params : candidate_params(sys)) {
    const DegenerationSplit s = split(sys, params);
    const NodePtr p = resolve(s.lp);
    if (!p->dim_known) continue;
    const NodePtr f = resolve(s.lf);
    if (!f->dim_known) continue;
    const NodePtr hp = resolve(s.hat_lp);
    if (!hp->dim_known) continue;
    const NodePtr hf = resolve(s.hat_lf);
    if (!hf->dim_known) continue;
    const SubDims dims{p->dim, f->dim, hp->dim, hf->dim};
    const L0Evaluation ev = evaluate_l0(s, dims);
    if (opts_.record_splits) splits_.push_back({s, dims, ev});
    if (ev.l0 != e) continue;

    auto node = std::make_shared<ProofNode>();
    node->system = sys;
    node->outcome = proved_outcome(e);
    node->dim = e;
    node->dim_known = true;
    node->rule = "degeneration";
    node->params = params;
    node->evaluation = ev;
    const Int gap = sys.d() - params.k;
    std::ostringstream detail;
    detail << "k=" << params.k << " b=" << params.b << ", r_P + r_F = " << ev.r_p + ev.r_f;
    if (ev.transversal) {
      detail << " >= d-k = " << gap << ", l0 = l_P + l_F - d + k = " << ev.l0;
    } else {
      detail << " <= d-k-1 = " << gap - 1 << ", l0 = l^_P + l^_F + 1 = " << ev.l0;
    }
    detail << " = e, and l <= l0 by semicontinuity";
    node->detail = detail.str();
    node->children = {p, f, hp, hf};
    node->child_roles = {"P", "F", "P^", "F^"};
    node->oracle_assisted = p->oracle_assisted || f->oracle_assisted || hp->oracle_assisted || hf->oracle_assisted;
    return node;
  }
  return nullptr;
}

Certificate certify(const System& sys, const CertifyOptions& opts) {
  Certifier c(opts);
  return c.certify(sys);
}

}  // namespace qhdim::degeneration
