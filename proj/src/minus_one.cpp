#include "qhdim/minus_one.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>
#include <tuple>

namespace qhdim::minus_one {

namespace {

using cremona::MultiplicitySequence;

MinusOneClass make_class(const System& sys, Family family, Int e, std::optional<Witness> w) {
  MinusOneClass c;
  c.system = sys;
  c.family = family;
  c.e = e;
  c.witness = w;
  c.u = 4 * sys.d() - sys.n() * sys.m();
  c.v = 2 * sys.d() - sys.n() * sys.m();
  c.irreducible = reduce_to_line(MultiplicitySequence::from_system(sys)).irreducible;
  return c;
}

bool is_line_through_two_points(const MultiplicitySequence& seq) {
  if (seq.degree != 1) return false;
  int ones = 0;
  for (Int x : seq.mults) {
    if (x == 1) {
      ++ones;
    } else if (x != 0) {
      return false;
    }
  }
  return ones == 2;
}

// Indices of the three largest entries, ties broken by lower index.
std::array<std::size_t, 3> top_three(const std::vector<Int>& v) {
  std::array<std::size_t, 3> best{};
  std::size_t filled = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::size_t pos = filled;
    while (pos > 0 && v[best[pos - 1]] < v[i]) --pos;
    if (pos >= 3) continue;
    for (std::size_t t = std::min<std::size_t>(filled, 2); t > pos; --t) best[t] = best[t - 1];
    best[pos] = i;
    filled = std::min<std::size_t>(filled + 1, 3);
  }
  std::sort(best.begin(), best.end());
  return best;
}

Int dot_with(const QhClass& c, const Atom& a) {
  return c.d * a.curve.delta - c.m0 * a.curve.mu0 - c.m * (a.curve.mu1 + (c.n - 1) * a.curve.mu2);
}

bool orbits_disjoint(const Atom& a, const Atom& b, bool same) {
  if (same) return a.count == 1 || member_dot(a, false, a) == 0;
  if (member_dot(a, true, b) != 0) return false;
  if (a.count > 1 && b.count > 1 && a.n >= 2 && member_dot(a, false, b) != 0) return false;
  return true;
}

std::optional<SpecialDecomposition> decompose_form(const System& form, const std::vector<Atom>& atoms,
                                                   Int e_max) {
  SpecialDecomposition dec;
  dec.form = form;
  dec.e_max = e_max;
  QhClass residual{form.d(), form.m0(), form.n(), form.m()};
  std::vector<bool> used(atoms.size(), false);
  bool has_multiple = false;
  for (int stage = 0;; ++stage) {
    std::vector<std::pair<std::size_t, Int>> negative;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const Int dot = dot_with(residual, atoms[i]);
      if (dot < 0) negative.emplace_back(i, -dot);
    }
    if (negative.empty()) break;
    QhClass next = residual;
    for (auto [i, mult] : negative) {
      if (used[i]) return std::nullopt;  // cannot happen for disjoint curves
      used[i] = true;
      const Atom& a = atoms[i];
      dec.fixed_parts.push_back({a, mult, stage});
      dec.v_gain += a.count * mult * (mult - 1) / 2;
      has_multiple = has_multiple || mult >= 2;
      next.d -= mult * a.total_d();
      next.m0 -= mult * a.total_m0();
      next.m -= mult * a.total_m();
    }
    residual = next;
    if (residual.d < 0) return std::nullopt;
  }
  if (!has_multiple || residual.v() < 0) return std::nullopt;
  for (std::size_t i = 0; i < dec.fixed_parts.size(); ++i) {
    for (std::size_t j = i; j < dec.fixed_parts.size(); ++j) {
      if (!orbits_disjoint(dec.fixed_parts[i].atom, dec.fixed_parts[j].atom, i == j)) return std::nullopt;
    }
  }
  if (residual.v() - virtual_dim(form) != dec.v_gain) {
    throw std::logic_error("fixed-part accounting failed for " + form.str());
  }
  dec.residual = residual;
  return dec;
}

}  // namespace

std::string family_name(const MinusOneClass& c) {
  switch (c.family) {
    case Family::Line: return "line";
    case Family::Conic5: return "conic5";
    case Family::LinePencil: return "pencil(e=" + std::to_string(c.e) + ")";
    case Family::Hyperbola: return "hyperbola";
  }
  return "?";
}

std::optional<MinusOneClass> class_from_witness(Int m, Int x, Int y) {
  if (m < 2 || x <= 0 || y <= 0 || x * y != (m - 1) * (2 * m + 1)) return std::nullopt;
  if (x + m < y) return std::nullopt;
  if (((x - y - m) % 2 + 2) % 2 != 0) return std::nullopt;
  if ((x + 2 * y - 1) % m != 0) return std::nullopt;
  const System sys((x + y + 3 * m) / 2, (x - y + m) / 2, (x + 2 * y - 1) / m + 4, m);
  return make_class(sys, Family::Hyperbola, 0, Witness{x, y});
}

std::vector<MinusOneClass> enumerate_qh_classes(Int m_max, Int e_max) {
  if (m_max < 1) throw std::invalid_argument("enumerate_qh_classes: m_max must be at least 1");
  std::vector<MinusOneClass> out;
  out.push_back(make_class(System(1, 1, 1, 1), Family::Line, 0, std::nullopt));
  out.push_back(make_class(System(2, 0, 5, 1), Family::Conic5, 0, std::nullopt));
  for (Int e = 1; e <= e_max; ++e) {
    out.push_back(make_class(System(e, e - 1, 2 * e, 1), Family::LinePencil, e, std::nullopt));
  }
  for (Int m = 2; m <= m_max; ++m) {
    const Int prod = (m - 1) * (2 * m + 1);
    for (Int x = 1; x * x <= prod; ++x) {
      if (prod % x != 0) continue;
      for (Int xx : {x, prod / x}) {
        if (xx == prod / xx && xx != x) continue;
        if (auto c = class_from_witness(m, xx, prod / xx)) out.push_back(*c);
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const MinusOneClass& a, const MinusOneClass& b) {
    return std::tuple(a.system.m(), a.system.d()) < std::tuple(b.system.m(), b.system.d());
  });
  return out;
}

std::vector<System> enumerate_homogeneous_classes() { return {System(1, 0, 2, 1), System(2, 0, 5, 1)}; }

MultiplicitySequence Curve::sequence(Int n) const {
  MultiplicitySequence seq{delta, {mu0}};
  if (n >= 1) seq.mults.push_back(mu1);
  for (Int i = 1; i < n; ++i) seq.mults.push_back(mu2);
  return seq;
}

Int default_delta_max(Int m_max) { return m_max + 1; }

std::vector<MinusOneConfiguration> enumerate_configurations(Int m_max, Int delta_max, Int e_max) {
  if (m_max < 1 || delta_max < 1) {
    throw std::invalid_argument("enumerate_configurations: bounds must be positive");
  }
  std::vector<MinusOneConfiguration> out;
  for (const MinusOneClass& c : enumerate_qh_classes(m_max, e_max)) {
    if (!c.irreducible) continue;
    const System& s = c.system;
    out.push_back({s, Curve{s.d(), s.m0(), s.m(), s.m()}, 1, false, false});
  }
  for (Int e = 2; e <= e_max; ++e) {
    out.push_back({System(e, e, e, 1), Curve{1, 1, 1, 0}, e, true, true});
  }
  // Orbits with mu1 = mu2 +- 1 and mu2 >= 1; mu0 comes from the canonical
  // degree condition 3*delta - mu0 - mu1 - (n-1)*mu2 = 1.
  for (Int delta = 1; delta <= delta_max; ++delta) {
    for (Int mu2 = 1; mu2 <= delta; ++mu2) {
      for (Int mu1 : {mu2 - 1, mu2 + 1}) {
        for (Int n = 2;; ++n) {
          const Int mu0 = 3 * delta - 1 - mu1 - (n - 1) * mu2;
          if (mu0 < 0) break;
          if (mu0 > delta) continue;
          if (n == 2 && mu1 < mu2) continue;  // same orbit as the swapped pattern
          const Curve curve{delta, mu0, mu1, mu2};
          const MultiplicitySequence seq = curve.sequence(n);
          if (seq.self_intersection() != -1) continue;
          const Int m = mu1 + (n - 1) * mu2;
          if (m > m_max) continue;
          const Int meet = delta * delta - mu0 * mu0 - 2 * mu1 * mu2 - (n - 2) * mu2 * mu2;
          if (meet != 0) continue;
          if (!reduce_to_line(seq).irreducible) continue;
          out.push_back({System(n * delta, n * mu0, n, m), curve, n, true, false});
        }
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const MinusOneConfiguration& a, const MinusOneConfiguration& b) {
    return std::tuple(a.total.m(), a.total.d(), a.total.m0(), a.total.n()) <
           std::tuple(b.total.m(), b.total.d(), b.total.m0(), b.total.n());
  });
  return out;
}

std::vector<System> homogeneous_configurations(Int m_max, Int delta_max) {
  std::set<System> found;
  for (const auto& c : enumerate_configurations(m_max, delta_max)) {
    const System& t = c.total;
    if (t.m0() == 0) found.insert(t);
    if (t.m0() == t.m() && t.m() > 0) found.insert(System(t.d(), 0, t.n() + 1, t.m()));
  }
  std::vector<System> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](const System& a, const System& b) {
    return std::tuple(a.d(), a.m()) < std::tuple(b.d(), b.m());
  });
  return out;
}

IrreducibilityResult reduce_to_line(const MultiplicitySequence& seq) {
  IrreducibilityResult r;
  r.start = seq;
  MultiplicitySequence cur = seq;
  while (cur.mults.size() < 3) cur.mults.push_back(0);
  while (true) {
    if (is_line_through_two_points(cur)) {
      r.irreducible = true;
      r.reason = "reached a line through two points";
      return r;
    }
    const auto idx = top_three(cur.mults);
    const Int sum = cur.mults[idx[0]] + cur.mults[idx[1]] + cur.mults[idx[2]];
    if (sum <= cur.degree) {
      r.reason = "degree does not decrease";
      return r;
    }
    cur = cremona::quadratic_transform(cur, idx[0], idx[1], idx[2]).seq;
    r.trace.push_back({idx[0], idx[1], idx[2], cur});
    if (!cur.effective()) {
      r.reason = "negative multiplicity or degree";
      return r;
    }
  }
}

IrreducibilityResult is_irreducible_class(const System& c) {
  const SystemInvariants inv = invariants(c);
  if (inv.self_int != -1 || inv.genus != 0) {
    throw std::invalid_argument(c.str() + " is not a (-1)-class");
  }
  IrreducibilityResult r = reduce_to_line(MultiplicitySequence::from_system(c));
  if (r.irreducible || c.m() < 2) return r;
  // Look for a smaller irreducible class on the same points met negatively.
  for (const MinusOneClass& b : enumerate_qh_classes(c.m(), 0)) {
    const System& s = b.system;
    if (s.n() != c.n() || s.d() >= c.d() || s == c || !b.irreducible) continue;
    const Int meet = intersect(c, s, c.n());
    if (meet >= 0) continue;
    Obstruction ob{s, meet, c.d() - s.d(), c.m0() - s.m0(), c.m() - s.m(), 0};
    ob.residual_v = virtual_dim(ob.residual_d, ob.residual_m0, c.n(), ob.residual_m);
    r.obstruction = ob;
    break;
  }
  return r;
}

IrreducibilityResult is_irreducible_class(const MinusOneClass& c) { return is_irreducible_class(c.system); }

nlohmann::json to_json(const IrreducibilityResult& r) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : r.trace) {
    steps.push_back({{"at", {s.i, s.j, s.k}}, {"result", s.after.without_zeros().str()}});
  }
  nlohmann::json out{{"irreducible", r.irreducible}, {"reason", r.reason},
                     {"start", r.start.str()}, {"steps", steps}};
  if (r.obstruction) {
    const auto& ob = *r.obstruction;
    out["obstruction"] = {{"curve", ob.curve.str()},
                          {"intersection", ob.intersection},
                          {"residual",
                           QhClass{ob.residual_d, ob.residual_m0, ob.curve.n(), ob.residual_m}.str()},
                          {"residual_v", ob.residual_v}};
  }
  return out;
}

Int Atom::total_d() const { return count * curve.delta; }
Int Atom::total_m0() const { return count * curve.mu0; }
Int Atom::total_m() const { return count == 1 ? curve.mu2 : curve.mu1 + (n - 1) * curve.mu2; }

std::string QhClass::str() const {
  std::string out = "L(" + std::to_string(d) + "," + std::to_string(m0);
  if (n != 0 && m != 0) out += "," + std::to_string(n) + "," + std::to_string(m);
  return out + ")";
}

Int member_dot(const Atom& a, bool same_odd_point, const Atom& b) {
  const Curve& x = a.curve;
  const Curve& y = b.curve;
  const Int n = a.n;
  Int pts = 0;
  if (same_odd_point) {
    pts = x.mu1 * y.mu1 + (n - 1) * x.mu2 * y.mu2;
  } else {
    pts = x.mu1 * y.mu2 + x.mu2 * y.mu1 + (n - 2) * x.mu2 * y.mu2;
  }
  return x.delta * y.delta - x.mu0 * y.mu0 - pts;
}

AtomCatalog build_catalog(Int d_max, Int n_max) {
  AtomCatalog cat;
  cat.e_max = std::max(d_max, n_max) + 1;
  const Int m_max = std::max<Int>(1, d_max + 1);
  cat.classes = enumerate_qh_classes(m_max, cat.e_max);
  cat.configurations = enumerate_configurations(m_max, std::max<Int>(1, d_max / 2), cat.e_max);
  return cat;
}

std::vector<Atom> atoms_for(const AtomCatalog& catalog, Int n, Int d_max, bool allow_mu0) {
  std::vector<Atom> atoms;
  std::set<std::tuple<Int, Int, Int, Int>> seen;
  auto add = [&](const Curve& c, Int count, std::string origin) {
    if (count * c.delta > d_max || (!allow_mu0 && c.mu0 != 0)) return;
    if (seen.insert({c.delta, c.mu0, c.mu1, c.mu2}).second) atoms.push_back({c, n, count, std::move(origin)});
  };
  for (const MinusOneClass& c : catalog.classes) {
    const System& s = c.system;
    if (!c.irreducible || s.n() != n) continue;
    add(Curve{s.d(), s.m0(), s.m(), s.m()}, 1, s.str());
  }
  for (const MinusOneConfiguration& c : catalog.configurations) {
    if (!c.compound || c.total.n() != n) continue;
    add(c.curve, c.count, "orbit in " + c.total.str());
  }
  return atoms;
}

std::optional<SpecialDecomposition> find_special_decomposition(const System& sys,
                                                               const AtomCatalog& catalog) {
  for (const System& form : equivalent_forms(sys)) {
    const auto atoms = atoms_for(catalog, form.n(), form.d(), form.m0() > 0);
    if (auto dec = decompose_form(form, atoms, catalog.e_max)) return dec;
  }
  return std::nullopt;
}

std::optional<SpecialDecomposition> find_special_decomposition(const System& sys) {
  return find_special_decomposition(sys, build_catalog(sys.d(), sys.n() + 1));
}

nlohmann::json to_json(const SpecialDecomposition& dec) {
  nlohmann::json parts = nlohmann::json::array();
  for (const auto& p : dec.fixed_parts) {
    const Curve& c = p.atom.curve;
    parts.push_back({{"curve", {c.delta, c.mu0, c.mu1, c.mu2}},
                     {"orbit_size", p.atom.count},
                     {"origin", p.atom.origin},
                     {"multiplicity", p.multiplicity},
                     {"stage", p.stage}});
  }
  return {{"form", dec.form.str()},
          {"fixed_parts", parts},
          {"residual", dec.residual.str()},
          {"residual_v", dec.residual.v()},
          {"v_gain", dec.v_gain},
          {"e_max", dec.e_max}};
}

}  // namespace qhdim::minus_one
