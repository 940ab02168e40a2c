#pragma once

// Independent checkers shared by the unit tests and the acceptance binary.
// Nothing here calls the library routine it is meant to check.

#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "qhdim/core.hpp"
#include "qhdim/minus_one.hpp"

namespace qhdim::testing {

// Smallest of the equivalent tuples, used to compare enumerations up to
// relabelling.
inline System canonical(const System& sys) { return equivalent_forms(sys).front(); }

// All tuples (d, m0, n, m) with d <= d_max, m >= 1, n >= 1 satisfying the
// two defining equations of a (-1)-class: self-intersection -1 and
// 3d - m0 - nm = 1. Brute force over (d, m0, m), solving for n.
inline std::set<System> brute_force_minus_one_classes(Int d_max) {
  std::set<System> out;
  for (Int d = 1; d <= d_max; ++d) {
    for (Int m0 = 0; m0 <= d; ++m0) {
      const Int rest = d * d - m0 * m0 + 1;  // = n m^2
      for (Int m = 1; m * m <= rest; ++m) {
        if (rest % (m * m) != 0) continue;
        const Int n = rest / (m * m);
        if (3 * d - m0 - n * m != 1) continue;
        out.insert(canonical(System(d, m0, n, m)));
      }
    }
  }
  return out;
}

// Expands every fixed part into explicit multiplicity vectors over
// (p0, p1, ..., pn) and checks, with plain integer arithmetic:
//  - each member is a (-1)-curve (C^2 = -1, K.C = -1),
//  - distinct members are disjoint,
//  - each member meets the form with intersection -N,
//  - form - sum N C equals the stated residual,
//  - v(residual) - v(form) = sum N(N-1)/2, and some N >= 2.
// Returns an empty string when all hold, else a description of the failure.
inline std::string check_decomposition(const minus_one::SpecialDecomposition& dec) {
  const System& form = dec.form;
  const Int n = form.n();
  struct Member {
    Int delta;
    std::vector<Int> mults;  // index 0 is p0
    Int N;
  };
  std::vector<Member> members;
  bool multiple = false;
  for (const auto& part : dec.fixed_parts) {
    const auto& c = part.atom.curve;
    multiple = multiple || part.multiplicity >= 2;
    if (part.atom.count == 1) {
      if (c.mu1 != c.mu2) return "single-member part with mu1 != mu2";
      std::vector<Int> mults(static_cast<std::size_t>(n + 1), c.mu2);
      mults[0] = c.mu0;
      members.push_back({c.delta, mults, part.multiplicity});
    } else {
      if (part.atom.count != n) return "orbit size differs from n";
      for (Int i = 1; i <= n; ++i) {
        std::vector<Int> mults(static_cast<std::size_t>(n + 1), c.mu2);
        mults[0] = c.mu0;
        mults[static_cast<std::size_t>(i)] = c.mu1;
        members.push_back({c.delta, mults, part.multiplicity});
      }
    }
  }
  if (!multiple) return "no fixed curve with N >= 2";
  auto dot = [](Int d1, const std::vector<Int>& a, Int d2, const std::vector<Int>& b) {
    Int s = d1 * d2;
    for (std::size_t i = 0; i < a.size(); ++i) s -= a[i] * b[i];
    return s;
  };
  std::vector<Int> form_mults(static_cast<std::size_t>(n + 1), form.m());
  form_mults[0] = form.m0();
  Int res_d = form.d();
  std::vector<Int> res = form_mults;
  Int gain = 0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    const Member& a = members[i];
    Int canon = 3 * a.delta;
    for (Int x : a.mults) canon -= x;
    if (dot(a.delta, a.mults, a.delta, a.mults) != -1 || canon != 1) {
      return "member " + std::to_string(i) + " is not a (-1)-curve";
    }
    if (dot(form.d(), form_mults, a.delta, a.mults) != -a.N) {
      return "member " + std::to_string(i) + " does not meet the form with -N";
    }
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      if (dot(a.delta, a.mults, members[j].delta, members[j].mults) != 0) {
        return "members " + std::to_string(i) + " and " + std::to_string(j) + " meet";
      }
    }
    res_d -= a.N * a.delta;
    for (std::size_t k = 0; k < res.size(); ++k) res[k] -= a.N * a.mults[k];
    gain += a.N * (a.N - 1) / 2;
  }
  const auto& r = dec.residual;
  if (res_d != r.d || res[0] != r.m0) return "residual degree or m0 mismatch";
  for (std::size_t k = 1; k < res.size(); ++k) {
    if (res[k] != r.m) return "residual is not quasi-homogeneous as stated";
  }
  const Int v_form = virtual_dim(form.d(), form.m0(), form.n(), form.m());
  const Int v_res = virtual_dim(r.d, r.m0, r.n, r.m);
  if (v_res - v_form != gain) return "v gain differs from sum N(N-1)/2";
  if (v_res < 0) return "residual has negative virtual dimension";
  return {};
}

struct TableInstance {
  System sys;
  Int v;
  Int l;
};

struct TableFamily {
  std::string pattern;
  // Instances with degree <= d_max.
  std::function<std::vector<TableInstance>(Int d_max)> instances;
};

// The eleven (-1)-special systems with m <= 3, written out independently of
// the library's table.
inline std::vector<TableFamily> special_families() {
  auto fixed = [](Int d, Int m0, Int n, Int m, Int v, Int l) {
    return [=](Int d_max) {
      std::vector<TableInstance> out;
      if (d <= d_max) out.push_back({System(d, m0, n, m), v, l});
      return out;
    };
  };
  std::vector<TableFamily> f;
  f.push_back({"L(4,0,5,2)", fixed(4, 0, 5, 2, -1, 0)});
  f.push_back({"L(2e,2e-2,2e,2)", [](Int d_max) {
                 std::vector<TableInstance> out;
                 for (Int e = 1; 2 * e <= d_max; ++e) out.push_back({System(2 * e, 2 * e - 2, 2 * e, 2), -1, 0});
                 return out;
               }});
  f.push_back({"L(d,d,e,2)", [](Int d_max) {
                 std::vector<TableInstance> out;
                 for (Int d = 2; d <= d_max; ++d) {
                   for (Int e = 1; 2 * e <= d; ++e) out.push_back({System(d, d, e, 2), d - 3 * e, d - 2 * e});
                 }
                 return out;
               }});
  f.push_back({"L(4,0,2,3)", fixed(4, 0, 2, 3, 2, 3)});
  f.push_back({"L(6,0,5,3)", fixed(6, 0, 5, 3, -3, 0)});
  f.push_back({"L(6,2,4,3)", fixed(6, 2, 4, 3, 0, 1)});
  f.push_back({"L(3e,3e-3,2e,3)", [](Int d_max) {
                 std::vector<TableInstance> out;
                 for (Int e = 1; 3 * e <= d_max; ++e) out.push_back({System(3 * e, 3 * e - 3, 2 * e, 3), -3, 0});
                 return out;
               }});
  f.push_back({"L(3e+1,3e-2,2e,3)", [](Int d_max) {
                 std::vector<TableInstance> out;
                 for (Int e = 1; 3 * e + 1 <= d_max; ++e) {
                   out.push_back({System(3 * e + 1, 3 * e - 2, 2 * e, 3), 1, 2});
                 }
                 return out;
               }});
  f.push_back({"L(4e,4e-2,2e,3)", [](Int d_max) {
                 std::vector<TableInstance> out;
                 for (Int e = 1; 4 * e <= d_max; ++e) out.push_back({System(4 * e, 4 * e - 2, 2 * e, 3), -1, 0});
                 return out;
               }});
  f.push_back({"L(d,d-1,e,3)", [](Int d_max) {
                 std::vector<TableInstance> out;
                 for (Int d = 1; d <= d_max; ++d) {
                   for (Int e = 1; 5 * e <= 2 * d; ++e) {
                     out.push_back({System(d, d - 1, e, 3), 2 * d - 6 * e, 2 * d - 5 * e});
                   }
                 }
                 return out;
               }});
  f.push_back({"L(d,d,e,3)", [](Int d_max) {
                 std::vector<TableInstance> out;
                 for (Int d = 3; d <= d_max; ++d) {
                   for (Int e = 1; 3 * e <= d; ++e) out.push_back({System(d, d, e, 3), d - 6 * e, d - 3 * e});
                 }
                 return out;
               }});
  return f;
}

// Collapses runs of whitespace and drops empty lines.
inline std::vector<std::string> normalized_lines(const std::string& text) {
  std::vector<std::string> out;
  std::string line;
  std::string word;
  auto flush_word = [&] {
    if (word.empty()) return;
    line += (line.empty() ? "" : " ") + word;
    word.clear();
  };
  for (char ch : text + "\n") {
    if (ch == '\n') {
      flush_word();
      if (!line.empty()) out.push_back(line);
      line.clear();
    } else if (ch == ' ' || ch == '\t') {
      flush_word();
    } else {
      word += ch;
    }
  }
  return out;
}

}  // namespace qhdim::testing
