#include "qhdim/cremona.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qhdim::cremona {

namespace {

DimensionResult make_result(const System& sys, Int dim, bool special, nlohmann::json cert) {
  cert["system"] = sys.str();
  return {dim, special ? Status::SpecialProved : Status::NonSpecialProved, std::move(cert)};
}

DimensionResult by_expected(const System& sys, Int dim, nlohmann::json cert) {
  return make_result(sys, dim, dim > expected_dim(sys), std::move(cert));
}

[[noreturn]] void reject(const char* op, const System& sys) {
  throw std::invalid_argument(std::string(op) + ": precondition fails for " + sys.str());
}

// Closed forms for L(d, d-m, n, m) with n <= 2 or m <= 1.
std::optional<std::pair<Int, const char*>> d_minus_m_base(Int d, Int m, Int n) {
  if (m == 0) return std::pair{d, "no multiple points"};
  if (m == 1) return std::pair{std::max<Int>(-1, 2 * d - n), "simple points only"};
  if (n == 0) return std::pair{virtual_dim(d, d - m, 0, 0), "one point"};
  if (n == 1) return std::pair{d + m * (d - m), "two points"};
  if (n == 2 && d <= 2 * m) return std::pair{(d - m) * (d - m + 3) / 2, "three points, d <= 2m"};
  if (n == 2) return std::pair{virtual_dim(d, d - m, 2, m), "three points, d > 2m"};
  return std::nullopt;
}

}  // namespace

MultiplicitySequence MultiplicitySequence::from_system(const System& sys) {
  MultiplicitySequence seq{sys.d(), {sys.m0()}};
  seq.mults.insert(seq.mults.end(), static_cast<std::size_t>(sys.n()), sys.m());
  return seq;
}

bool MultiplicitySequence::effective() const {
  return degree >= 0 && std::all_of(mults.begin(), mults.end(), [](Int x) { return x >= 0; });
}

Int MultiplicitySequence::self_intersection() const {
  Int s = degree * degree;
  for (Int x : mults) s -= x * x;
  return s;
}

Int MultiplicitySequence::canonical_degree() const {
  return 3 * degree - std::accumulate(mults.begin(), mults.end(), Int{0});
}

Int MultiplicitySequence::virtual_dim() const {
  Int v = degree * (degree + 3) / 2;
  for (Int x : mults) v -= x * (x + 1) / 2;
  return v;
}

MultiplicitySequence MultiplicitySequence::without_zeros() const {
  MultiplicitySequence out{degree, {}};
  for (std::size_t i = 0; i < mults.size(); ++i) {
    if (i == 0 || mults[i] != 0) out.mults.push_back(mults[i]);
  }
  return out;
}

std::optional<System> MultiplicitySequence::as_system() const {
  if (!effective()) return std::nullopt;
  Int m0 = mults.empty() ? 0 : mults[0];
  Int n = 0;
  Int m = 0;
  for (std::size_t i = 1; i < mults.size(); ++i) {
    if (mults[i] == 0) continue;
    if (m != 0 && mults[i] != m) return std::nullopt;
    m = mults[i];
    ++n;
  }
  return System(degree, m0, n, m);
}

std::string MultiplicitySequence::str() const {
  std::string out = "(" + std::to_string(degree) + ";";
  for (std::size_t i = 0; i < mults.size(); ++i) {
    out += (i == 0 ? " " : ", ") + std::to_string(mults[i]);
  }
  return out + ")";
}

nlohmann::json to_json(const MultiplicitySequence& seq) {
  return {{"degree", seq.degree}, {"mults", seq.mults}};
}

TransformResult quadratic_transform(const MultiplicitySequence& seq, std::size_t i, std::size_t j,
                                    std::size_t k) {
  if (i == j || j == k || i == k) throw std::invalid_argument("quadratic_transform: repeated index");
  const std::size_t size = seq.mults.size();
  if (i >= size || j >= size || k >= size) {
    throw std::invalid_argument("quadratic_transform: index out of range for " + seq.str());
  }
  const Int d = seq.degree;
  const Int mi = seq.mults[i];
  const Int mj = seq.mults[j];
  const Int mk = seq.mults[k];
  TransformResult out{seq, 2 * d < mi + mj + mk};
  out.seq.degree = 2 * d - mi - mj - mk;
  out.seq.mults[i] = d - mj - mk;
  out.seq.mults[j] = d - mi - mk;
  out.seq.mults[k] = d - mi - mj;
  return out;
}

LargeM0Form large_m0_form(Int d, Int divisor, Int n) {
  if (divisor <= 0 || d < 0 || n < 0) throw std::invalid_argument("large_m0_form: bad arguments");
  return {d / divisor, d % divisor, n / 2, n % 2};
}

DimensionResult dim_m0_eq_d_minus_m(const System& sys) {
  const Int d = sys.d();
  const Int m = sys.m();
  const Int n = sys.n();
  if (m < 2 || m > d || sys.m0() != d - m) reject("dim_m0_eq_d_minus_m", sys);
  const LargeM0Form f = large_m0_form(d, m, n);
  nlohmann::json cert{{"rule", "m0 = d - m closed form"},
                      {"q", f.q}, {"mu", f.mu}, {"h", f.h}, {"eps", f.eps}};
  if (f.q >= f.h + 1) {
    cert["case"] = "q >= h + 1";
    return make_result(sys, virtual_dim(sys), false, cert);
  }
  if (f.q <= f.h - 1) {
    cert["case"] = "q <= h - 1";
    return make_result(sys, -1, false, cert);
  }
  if (f.eps == 1) {
    cert["case"] = "q = h, eps = 1";
    return make_result(sys, -1, false, cert);
  }
  if (f.mu == m - 1) {
    cert["case"] = "q = h, eps = 0, mu = m - 1";
    return make_result(sys, (m - 1) * (m + 2) / 2, false, cert);
  }
  cert["case"] = "q = h, eps = 0, mu <= m - 2";
  return make_result(sys, f.mu * (f.mu + 3) / 2, true, cert);
}

DimensionResult dim_m0_eq_d_minus_m_recursive(const System& sys) {
  Int d = sys.d();
  const Int m = sys.m();
  Int n = sys.n();
  if (m > d || sys.m0() != d - m) reject("dim_m0_eq_d_minus_m_recursive", sys);
  Int steps = 0;
  if (m >= 2) {
    while (n >= 2 && d >= 2 * m) {
      d -= m;
      n -= 2;
      ++steps;
    }
  }
  nlohmann::json cert{{"rule", "m0 = d - m Cremona recursion"}, {"steps", steps},
                      {"reduced", System(d, d - m, n, m).str()}};
  if (auto base = d_minus_m_base(d, m, n)) {
    cert["base"] = base->second;
    return by_expected(sys, base->first, cert);
  }
  cert["base"] = "n >= 3, m <= d <= 2m - 1: empty";
  return by_expected(sys, -1, cert);
}

DimensionResult dim_m0_ge_d_minus_m(const System& sys) {
  const Int d = sys.d();
  const Int m0 = sys.m0();
  const Int n = sys.n();
  const Int m = sys.m();
  const Int k = m0 - d + m;
  if (k <= 0) reject("dim_m0_ge_d_minus_m", sys);
  if (m0 > d) return make_result(sys, -1, false, {{"rule", "m0 > d: empty"}});
  if (m0 == d) {
    return by_expected(sys, std::max<Int>(-1, d - n * m), {{"rule", "m0 = d: lines through p0"}});
  }
  if (m0 == d - 1) {  // here m >= 2 since k >= 1
    return by_expected(sys, std::max<Int>(-1, 2 * d - 2 * n * m + n),
                       {{"rule", "m0 = d - 1: lines through p0 and multiplicity one"}});
  }
  // m0 <= d - 2 forces m - k >= 2.
  const Int dp = d - k * n;
  const Int mp = m - k;
  nlohmann::json cert{{"rule", "split off lines through p0"}, {"k", k}};
  if (dp < mp) {
    cert["residual"] = "negative degree or multiplicity";
    return make_result(sys, -1, false, cert);
  }
  const System residual(dp, dp - mp, n, mp);
  const DimensionResult r = dim_m0_eq_d_minus_m(residual);
  cert["residual"] = residual.str();
  cert["residual_certificate"] = r.certificate;
  const bool residual_special = r.status == Status::SpecialProved;
  const bool special = residual_special || (k >= 2 && r.dim >= 0);
  return make_result(sys, r.dim, special, cert);
}

DimensionResult dim_m0_eq_d_minus_m_minus_1(const System& sys) {
  const Int d = sys.d();
  const Int m = sys.m();
  const Int n = sys.n();
  if (m < 2 || m > d - 1 || sys.m0() != d - m - 1) reject("dim_m0_eq_d_minus_m_minus_1", sys);
  const LargeM0Form f = large_m0_form(d, m - 1, n);
  nlohmann::json cert{{"rule", "m0 = d - m - 1 closed form"},
                      {"q", f.q}, {"mu", f.mu}, {"h", f.h}, {"eps", f.eps}};
  if (f.q == f.h + 1 && f.mu == 0 && f.eps == 0 && (m - 1) * (m + 2) >= 4 * f.h) {
    cert["case"] = "q = h + 1, mu = eps = 0";
    return by_expected(sys, (m - 1) * (m + 2) / 2 - 2 * f.h, cert);
  }
  if (f.q == f.h && f.eps == 0 && 4 * f.q <= f.mu * (f.mu + 3)) {
    cert["case"] = "q = h, eps = 0";
    return by_expected(sys, f.mu * (f.mu + 3) / 2 - 2 * f.q, cert);
  }
  cert["case"] = "generic";
  return by_expected(sys, expected_dim(sys), cert);
}

DimensionResult dim_few_points(const System& sys) {
  const Int d = sys.d();
  const Int m0 = sys.m0();
  const Int n = sys.n();
  const Int m = sys.m();
  if (m <= 1) {
    const Int base = trinomial_dim(d, m0, 0, 0);
    return by_expected(sys, multiplicity_one(base, n),
                       {{"rule", "simple points"}, {"dim_without_points", base}});
  }
  if (n > 2) reject("dim_few_points", sys);
  if (m0 == d - m) {
    if (auto base = d_minus_m_base(d, m, n)) {
      return by_expected(sys, base->first, {{"rule", "m0 = d - m base case"}, {"case", base->second}});
    }
  }
  const Int dim = trinomial_dim(d, m0, n >= 1 ? m : 0, n >= 2 ? m : 0);
  return by_expected(sys, dim, {{"rule", "monomial count at coordinate points"}});
}

std::optional<DimensionResult> closed_form_dim(const System& sys) {
  const Int d = sys.d();
  const Int m0 = sys.m0();
  const Int m = sys.m();
  if (m0 > d) return make_result(sys, -1, false, {{"rule", "m0 > d: empty"}});
  if (m >= 1 && m0 >= d - m + 1) return dim_m0_ge_d_minus_m(sys);
  if (m >= 2 && m0 == d - m) return dim_m0_eq_d_minus_m(sys);
  if (m >= 2 && m0 == d - m - 1) return dim_m0_eq_d_minus_m_minus_1(sys);
  if (sys.n() <= 2 || m <= 1) return dim_few_points(sys);
  return std::nullopt;
}

std::optional<DimensionResult> closed_form_dim_any(const System& sys) {
  std::optional<DimensionResult> found;
  for (const System& form : equivalent_forms(sys)) {
    auto r = closed_form_dim(form);
    if (!r) continue;
    if (found && found->dim != r->dim) {
      throw std::logic_error("closed forms disagree on " + sys.str() + ": " +
                             std::to_string(found->dim) + " vs " + std::to_string(r->dim));
    }
    if (!found) found = std::move(r);
  }
  return found;
}

}  // namespace qhdim::cremona
