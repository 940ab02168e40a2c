#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace qhdim {

using Int = std::int64_t;

// Every parameter is capped so that the quadratic formulas stay well inside
// 64 bits.
inline constexpr Int kParameterCap = 1'000'000;

// L(d, m0, n, m): plane curves of degree d with multiplicity m0 at p0 and
// multiplicity m at n further general points. A system with n == 0 or m == 0
// is stored as L(d, m0, 0, 0).
class System {
 public:
  constexpr System() = default;
  System(Int d, Int m0, Int n = 0, Int m = 0);

  Int d() const noexcept { return d_; }
  Int m0() const noexcept { return m0_; }
  Int n() const noexcept { return n_; }
  Int m() const noexcept { return m_; }

  std::string str() const;

  friend auto operator<=>(const System&, const System&) = default;

 private:
  Int d_ = 0;
  Int m0_ = 0;
  Int n_ = 0;
  Int m_ = 0;
};

std::ostream& operator<<(std::ostream& os, const System& sys);

struct SystemInvariants {
  Int v = 0;
  Int e = 0;
  Int self_int = 0;
  Int genus = 0;
};

// Raw formulas; arguments may be negative (used for residual classes).
Int virtual_dim(Int d, Int m0, Int n, Int m);
Int self_intersection(Int d, Int m0, Int n, Int m);
Int arithmetic_genus(Int d, Int m0, Int n, Int m);

SystemInvariants invariants(const System& sys);
Int virtual_dim(const System& sys);
Int expected_dim(const System& sys);

// d*d' - m0*m0' - n_shared*m*m'. Throws if n_shared exceeds either n.
Int intersect(const System& a, const System& b, Int n_shared);

// Dimension after imposing n simple general points on a system of
// dimension dim_m.
Int multiplicity_one(Int dim_m, Int n);

// Generic dimension of degree-d curves with multiplicities m0, m1, m2 at
// three general points, by counting monomials x^a y^b z^c.
Int trinomial_dim(Int d, Int m0, Int m1, Int m2);

// For n == 1 the two points are interchangeable; the key puts the larger
// multiplicity at p0.
System memo_key(const System& sys);

// All tuples naming the same system: moving one of the n points to p0 when
// m0 is 0, absorbing p0 when m0 == m, and swapping roles when n == 1.
std::vector<System> equivalent_forms(const System& sys);

enum class Status { NonSpecialProved, SpecialProved, Conjectural, OracleMeasured };

std::string_view to_string(Status status);

struct DimensionResult {
  Int dim = -1;
  Status status = Status::Conjectural;
  nlohmann::json certificate;  // null when there is nothing to attach
};

nlohmann::json to_json(const System& sys);

}  // namespace qhdim
