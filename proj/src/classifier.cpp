#include "qhdim/classifier.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qhdim/cremona.hpp"
#include "qhdim/degeneration.hpp"

namespace qhdim::classifier {

namespace {

constexpr std::array<SpecialTableEntry, 11> kTable{{
    {"L(4,0,5,2)", "", "-1", "0", 0},
    {"L(2e,2e-2,2e,2)", "e>=1", "-1", "0", 1},
    {"L(d,d,e,2)", "d>=2e>=2", "d-3e", "d-2e", 2},
    {"L(4,0,2,3)", "", "2", "3", 0},
    {"L(6,0,5,3)", "", "-3", "0", 0},
    {"L(6,2,4,3)", "", "0", "1", 0},
    {"L(3e,3e-3,2e,3)", "e>=1", "-3", "0", 1},
    {"L(3e+1,3e-2,2e,3)", "e>=1", "1", "2", 1},
    {"L(4e,4e-2,2e,3)", "e>=1", "-1", "0", 1},
    {"L(d,d-1,e,3)", "2d>=5e>=5", "2d-6e", "2d-5e", 2},
    {"L(d,d,e,3)", "d>=3e>=3", "d-6e", "d-3e", 2},
}};

std::string cell_row(const std::vector<std::string>& cells, std::size_t width) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    std::string c = cells[i];
    if (i + 1 < cells.size() && c.size() < width) c.resize(width, ' ');
    out += c;
    if (i + 1 < cells.size() && cells[i].size() >= width) out += ' ';
  }
  return out + "\n";
}

std::string num(Int x) { return std::to_string(x); }

}  // namespace

std::span<const SpecialTableEntry> special_table() { return kTable; }

std::optional<TableMatch> match_entry(std::size_t entry, const System& s) {
  const Int d = s.d();
  const Int m0 = s.m0();
  const Int n = s.n();
  const Int m = s.m();
  const Int e = n / 2;
  const bool even = n >= 2 && n % 2 == 0;
  TableMatch t;
  t.entry = entry;
  t.form = s;
  auto hit = [&](Int dp, Int ep, Int v, Int l) {
    t.d_param = dp;
    t.e_param = ep;
    t.v = v;
    t.l = l;
    return std::optional<TableMatch>(t);
  };
  switch (entry) {
    case 0:
      if (s == System(4, 0, 5, 2)) return hit(0, 0, -1, 0);
      break;
    case 1:
      if (m == 2 && even && d == 2 * e && m0 == d - 2) return hit(0, e, -1, 0);
      break;
    case 2:
      if (m == 2 && n >= 1 && m0 == d && d >= 2 * n) return hit(d, n, d - 3 * n, d - 2 * n);
      break;
    case 3:
      if (s == System(4, 0, 2, 3)) return hit(0, 0, 2, 3);
      break;
    case 4:
      if (s == System(6, 0, 5, 3)) return hit(0, 0, -3, 0);
      break;
    case 5:
      if (s == System(6, 2, 4, 3)) return hit(0, 0, 0, 1);
      break;
    case 6:
      if (m == 3 && even && d == 3 * e && m0 == 3 * e - 3) return hit(0, e, -3, 0);
      break;
    case 7:
      if (m == 3 && even && d == 3 * e + 1 && m0 == 3 * e - 2) return hit(0, e, 1, 2);
      break;
    case 8:
      if (m == 3 && even && d == 4 * e && m0 == 4 * e - 2) return hit(0, e, -1, 0);
      break;
    case 9:
      if (m == 3 && n >= 1 && m0 == d - 1 && 2 * d >= 5 * n) return hit(d, n, 2 * d - 6 * n, 2 * d - 5 * n);
      break;
    case 10:
      if (m == 3 && n >= 1 && m0 == d && d >= 3 * n) return hit(d, n, d - 6 * n, d - 3 * n);
      break;
    default:
      throw std::out_of_range("special table has 11 entries");
  }
  return std::nullopt;
}

std::vector<System> instantiate(std::size_t entry, Int d_max) {
  std::vector<System> out;
  auto keep = [&](Int d, Int m0, Int n, Int m) {
    if (d <= d_max) out.emplace_back(d, m0, n, m);
  };
  switch (entry) {
    case 0: keep(4, 0, 5, 2); break;
    case 3: keep(4, 0, 2, 3); break;
    case 4: keep(6, 0, 5, 3); break;
    case 5: keep(6, 2, 4, 3); break;
    case 1:
      for (Int e = 1; 2 * e <= d_max; ++e) keep(2 * e, 2 * e - 2, 2 * e, 2);
      break;
    case 6:
      for (Int e = 1; 3 * e <= d_max; ++e) keep(3 * e, 3 * e - 3, 2 * e, 3);
      break;
    case 7:
      for (Int e = 1; 3 * e + 1 <= d_max; ++e) keep(3 * e + 1, 3 * e - 2, 2 * e, 3);
      break;
    case 8:
      for (Int e = 1; 4 * e <= d_max; ++e) keep(4 * e, 4 * e - 2, 2 * e, 3);
      break;
    case 2:
      for (Int e = 1; 2 * e <= d_max; ++e) {
        for (Int d = 2 * e; d <= d_max; ++d) keep(d, d, e, 2);
      }
      break;
    case 9:
      for (Int e = 1; 5 * e <= 2 * d_max; ++e) {
        for (Int d = (5 * e + 1) / 2; d <= d_max; ++d) keep(d, d - 1, e, 3);
      }
      break;
    case 10:
      for (Int e = 1; 3 * e <= d_max; ++e) {
        for (Int d = 3 * e; d <= d_max; ++d) keep(d, d, e, 3);
      }
      break;
    default:
      throw std::out_of_range("special table has 11 entries");
  }
  return out;
}

bool in_classified_range(const System& sys) {
  const auto forms = equivalent_forms(sys);
  return std::any_of(forms.begin(), forms.end(), [](const System& f) { return f.m() <= 3; });
}

std::optional<TableMatch> lookup_special_table(const System& sys, bool with_decomposition) {
  if (!in_classified_range(sys)) {
    throw std::invalid_argument("lookup_special_table: " + sys.str() + " has m > 3");
  }
  std::optional<TableMatch> first;
  for (int pass = 0; pass < 2; ++pass) {
    for (const System& form : equivalent_forms(sys)) {
      if (form.m() > 3) continue;
      for (std::size_t i = 0; i < kTable.size(); ++i) {
        if ((kTable[i].params == 0) != (pass == 0)) continue;
        auto match = match_entry(i, form);
        if (!match) continue;
        if (match->v != virtual_dim(sys)) {
          throw std::logic_error("table entry " + std::string(kTable[i].pattern) + " gives v = " +
                                 num(match->v) + " for " + sys.str());
        }
        if (first && first->l != match->l) {
          throw std::logic_error("overlapping table entries disagree on " + sys.str());
        }
        if (!first) first = match;
      }
    }
  }
  if (first && with_decomposition) first->decomposition = minus_one::find_special_decomposition(sys);
  return first;
}

DimensionResult dimension(const System& sys) {
  const SystemInvariants inv = invariants(sys);
  if (in_classified_range(sys)) {
    if (auto match = lookup_special_table(sys, false)) {
      if (auto closed = cremona::closed_form_dim_any(sys); closed && closed->dim != match->l) {
        throw std::logic_error("table and closed form disagree on " + sys.str());
      }
      const auto& entry = kTable[match->entry];
      nlohmann::json cert{{"rule", "(-1)-special list for m <= 3"},
                          {"entry", entry.pattern},
                          {"form", match->form.str()},
                          {"v", match->v},
                          {"l", match->l}};
      if (entry.params >= 1) cert["e"] = match->e_param;
      if (entry.params == 2) cert["d"] = match->d_param;
      return {match->l, Status::SpecialProved, cert};
    }
    return {inv.e, Status::NonSpecialProved,
            {{"rule", "m <= 3 and not (-1)-special: non-special"}, {"v", inv.v}}};
  }
  if (auto closed = cremona::closed_form_dim_any(sys)) return *closed;
  if (auto dec = minus_one::find_special_decomposition(sys)) {
    return {dec->residual.v(), Status::Conjectural,
            {{"rule", "(-1)-special prediction"}, {"decomposition", minus_one::to_json(*dec)}}};
  }
  return {inv.e, Status::Conjectural, {{"rule", "no (-1)-curve fixed part: expected dimension"}}};
}

std::string render_qh_class_table(const std::vector<minus_one::MinusOneClass>& classes) {
  constexpr std::size_t w = 7;
  std::string out = cell_row({"d", "m0", "n", "m", "(x", "y)"}, w);
  bool family = false;
  for (const auto& c : classes) family = family || c.family == minus_one::Family::LinePencil;
  bool family_done = false;
  for (const auto& c : classes) {
    if (c.family == minus_one::Family::LinePencil) continue;
    const System& s = c.system;
    if (family && !family_done && s.m() >= 2) {
      out += cell_row({"e>=1", "e-1", "2e", "1", "-", "-"}, w);
      family_done = true;
    }
    if (c.witness) {
      out += cell_row({num(s.d()), num(s.m0()), num(s.n()), num(s.m()), "(" + num(c.witness->x),
                       num(c.witness->y) + ")"}, w);
    } else {
      out += cell_row({num(s.d()), num(s.m0()), num(s.n()), num(s.m()), "-", "-"}, w);
    }
  }
  if (family && !family_done) out += cell_row({"e>=1", "e-1", "2e", "1", "-", "-"}, w);
  return out;
}

std::string render_configuration_table(const std::vector<minus_one::MinusOneConfiguration>& configs) {
  constexpr std::size_t w = 7;
  std::string out = cell_row({"d", "m0", "n", "m", "(delta", "mu0", "mu1", "mu2)"}, w);
  bool family_done = false;
  for (const auto& c : configs) {
    if (!c.compound) continue;
    if (c.pencil_family) {
      if (!family_done) out += cell_row({"e>=2", "e", "e", "1", "(1", "1", "1", "0)"}, w);
      family_done = true;
      continue;
    }
    const System& s = c.total;
    out += cell_row({num(s.d()), num(s.m0()), num(s.n()), num(s.m()), "(" + num(c.curve.delta),
                     num(c.curve.mu0), num(c.curve.mu1), num(c.curve.mu2) + ")"}, w);
  }
  return out;
}

std::string render_special_table() {
  std::string out = cell_row({"system", "range", "v", "l"}, 20);
  for (const auto& e : kTable) {
    out += cell_row({std::string(e.pattern), e.constraint.empty() ? "-" : std::string(e.constraint),
                     std::string(e.v_formula), std::string(e.l_formula)}, 20);
  }
  return out;
}

nlohmann::json to_json(const SweepReport& report) {
  nlohmann::json mism = nlohmann::json::array();
  for (const auto& m : report.mismatches) {
    mism.push_back({{"system", m.sys.str()}, {"kind", m.kind}, {"expected", m.expected}, {"measured", m.measured}});
  }
  return {{"cells", report.cells},
          {"special", report.special},
          {"certified_empty", report.certified_empty},
          {"certified_nonspecial", report.certified_nonspecial},
          {"certify_inconclusive", report.certify_inconclusive},
          {"mismatches", mism},
          {"seconds", report.seconds}};
}

SweepReport verify_sweep(const SweepOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  std::set<System> unique;
  for (Int m = opts.m_min; m <= opts.m_max; ++m) {
    for (Int d = 0; d <= opts.d_max; ++d) {
      for (Int m0 = 0; m0 <= d; ++m0) {
        for (Int n = 0; n <= opts.n_max; ++n) unique.emplace(d, m0, n, m);
      }
    }
  }
  const std::vector<System> cells(unique.begin(), unique.end());

  SweepReport report;
  report.cells = cells.size();
  std::mutex mu;
  std::atomic<std::size_t> next{0};
  auto cache = std::make_shared<degeneration::CertCache>();
  oracle::OracleConfig ocfg = opts.oracle;
  ocfg.parallel_trials = false;

  auto worker = [&] {
    degeneration::CertifyOptions copts;
    degeneration::Certifier certifier(copts, cache);
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      const System& sys = cells[i];
      std::vector<SweepMismatch> local;
      const Int e = expected_dim(sys);
      const DimensionResult theory = dimension(sys);
      const Int measured = oracle::measure_dim(sys, ocfg).dim;
      const bool special = theory.dim > e;
      if (theory.dim != measured) local.push_back({sys, "dimension", theory.dim, measured});
      if (special != (measured > e)) local.push_back({sys, "speciality", special ? 1 : 0, measured > e ? 1 : 0});
      int outcome = -1;
      if (opts.certify) {
        try {
          const auto cert = certifier.certify(sys);
          outcome = static_cast<int>(cert.outcome);
          if (cert.outcome != degeneration::Outcome::Inconclusive && cert.dim != measured) {
            local.push_back({sys, "unsound certificate", cert.dim, measured});
          }
        } catch (const degeneration::ResourceLimitError&) {
          outcome = static_cast<int>(degeneration::Outcome::Inconclusive);
        }
      }
      std::lock_guard lock(mu);
      report.special += special ? 1 : 0;
      if (outcome == static_cast<int>(degeneration::Outcome::EmptyProved)) ++report.certified_empty;
      if (outcome == static_cast<int>(degeneration::Outcome::NonSpecialProved)) ++report.certified_nonspecial;
      if (outcome == static_cast<int>(degeneration::Outcome::Inconclusive)) ++report.certify_inconclusive;
      report.mismatches.insert(report.mismatches.end(), local.begin(), local.end());
    }
  };
  unsigned threads = opts.threads != 0 ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::sort(report.mismatches.begin(), report.mismatches.end(),
            [](const SweepMismatch& a, const SweepMismatch& b) { return std::tie(a.sys, a.kind) < std::tie(b.sys, b.kind); });
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace qhdim::classifier
