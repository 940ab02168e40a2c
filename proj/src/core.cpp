#include "qhdim/core.hpp"

#include <algorithm>
#include <array>
#include <ostream>
#include <set>
#include <stdexcept>

namespace qhdim {

namespace {

void check_parameter(Int value, const char* name) {
  if (value < 0 || value > kParameterCap) {
    throw std::invalid_argument(std::string("system parameter ") + name + " = " +
                                std::to_string(value) + " outside [0, 10^6]");
  }
}

// Nonnegative integer solutions of a + b + c = t.
Int compositions3(Int t) { return t < 0 ? 0 : (t + 1) * (t + 2) / 2; }

}  // namespace

System::System(Int d, Int m0, Int n, Int m) : d_(d), m0_(m0), n_(n), m_(m) {
  check_parameter(d, "d");
  check_parameter(m0, "m0");
  check_parameter(n, "n");
  check_parameter(m, "m");
  if (n_ == 0 || m_ == 0) {
    n_ = 0;
    m_ = 0;
  }
}

std::string System::str() const {
  std::string out = "L(" + std::to_string(d_) + "," + std::to_string(m0_);
  if (n_ > 0) out += "," + std::to_string(n_) + "," + std::to_string(m_);
  return out + ")";
}

std::ostream& operator<<(std::ostream& os, const System& sys) { return os << sys.str(); }

Int virtual_dim(Int d, Int m0, Int n, Int m) {
  return d * (d + 3) / 2 - m0 * (m0 + 1) / 2 - n * (m * (m + 1) / 2);
}

Int self_intersection(Int d, Int m0, Int n, Int m) { return d * d - m0 * m0 - n * m * m; }

Int arithmetic_genus(Int d, Int m0, Int n, Int m) {
  return (d * (d - 3) - m0 * (m0 - 1) - n * m * (m - 1)) / 2 + 1;
}

SystemInvariants invariants(const System& sys) {
  SystemInvariants inv;
  inv.v = virtual_dim(sys.d(), sys.m0(), sys.n(), sys.m());
  inv.e = std::max<Int>(-1, inv.v);
  inv.self_int = self_intersection(sys.d(), sys.m0(), sys.n(), sys.m());
  inv.genus = arithmetic_genus(sys.d(), sys.m0(), sys.n(), sys.m());
  return inv;
}

Int virtual_dim(const System& sys) { return invariants(sys).v; }

Int expected_dim(const System& sys) { return invariants(sys).e; }

Int intersect(const System& a, const System& b, Int n_shared) {
  if (n_shared < 0 || n_shared > std::min(a.n(), b.n())) {
    throw std::invalid_argument("intersect: n_shared = " + std::to_string(n_shared) +
                                " exceeds the point count of " + a.str() + " or " + b.str());
  }
  return a.d() * b.d() - a.m0() * b.m0() - n_shared * a.m() * b.m();
}

Int multiplicity_one(Int dim_m, Int n) { return std::max<Int>(-1, dim_m - n); }

Int trinomial_dim(Int d, Int m0, Int m1, Int m2) {
  // b + c >= m0 is a <= d - m0, and so on; count a + b + c = d under three
  // upper bounds by inclusion-exclusion.
  const std::array<Int, 3> cap{d - m0, d - m1, d - m2};
  if (d < 0 || cap[0] < 0 || cap[1] < 0 || cap[2] < 0) return -1;
  Int count = 0;
  for (int mask = 0; mask < 8; ++mask) {
    Int t = d;
    int bits = 0;
    for (int i = 0; i < 3; ++i) {
      if (mask & (1 << i)) {
        t -= cap[i] + 1;
        ++bits;
      }
    }
    count += (bits % 2 == 0 ? 1 : -1) * compositions3(t);
  }
  return count - 1;
}

System memo_key(const System& sys) {
  if (sys.n() == 1 && sys.m0() < sys.m()) return System(sys.d(), sys.m(), 1, sys.m0());
  return sys;
}

std::vector<System> equivalent_forms(const System& sys) {
  std::set<System> seen{sys};
  std::vector<System> queue{sys};
  auto push = [&](const System& s) {
    if (seen.insert(s).second) queue.push_back(s);
  };
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const System s = queue[i];
    if (s.m0() == 0 && s.n() >= 1) push(System(s.d(), s.m(), s.n() - 1, s.m()));
    if (s.m0() == s.m() && s.m() > 0) push(System(s.d(), 0, s.n() + 1, s.m()));
    if (s.n() == 1) push(System(s.d(), s.m(), 1, s.m0()));
    if (s.n() == 0 && s.m0() > 0) push(System(s.d(), 0, 1, s.m0()));
  }
  return {seen.begin(), seen.end()};
}

std::string_view to_string(Status status) {
  switch (status) {
    case Status::NonSpecialProved: return "NonSpecialProved";
    case Status::SpecialProved: return "SpecialProved";
    case Status::Conjectural: return "Conjectural";
    case Status::OracleMeasured: return "OracleMeasured";
  }
  return "?";
}

nlohmann::json to_json(const System& sys) {
  return {{"d", sys.d()}, {"m0", sys.m0()}, {"n", sys.n()}, {"m", sys.m()}};
}

}  // namespace qhdim
