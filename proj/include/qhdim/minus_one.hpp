#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qhdim/core.hpp"
#include "qhdim/cremona.hpp"

namespace qhdim::minus_one {

inline constexpr Int kDefaultEMax = 50;

enum class Family { Line, Conic5, LinePencil, Hyperbola };

struct Witness {
  Int x = 0;
  Int y = 0;
};

// A quasi-homogeneous class with L^2 = -1 and genus 0. For LinePencil the
// class is L(e, e-1, 2e, 1).
struct MinusOneClass {
  System system;
  Family family = Family::Hyperbola;
  Int e = 0;
  std::optional<Witness> witness;
  Int u = 0;  // 4d - nm
  Int v = 0;  // 2d - nm
  bool irreducible = false;
};

std::string family_name(const MinusOneClass& c);

// The class attached to a factorization x*y = (m-1)(2m+1), if the
// integrality and sign conditions hold.
std::optional<MinusOneClass> class_from_witness(Int m, Int x, Int y);

std::vector<MinusOneClass> enumerate_qh_classes(Int m_max, Int e_max = kDefaultEMax);

std::vector<System> enumerate_homogeneous_classes();

// One member of an orbit: degree delta, multiplicity mu0 at p0, mu1 at one of
// the n points and mu2 at the others.
struct Curve {
  Int delta = 0;
  Int mu0 = 0;
  Int mu1 = 0;
  Int mu2 = 0;

  cremona::MultiplicitySequence sequence(Int n) const;
};

struct MinusOneConfiguration {
  System total;
  Curve curve;
  Int count = 1;  // orbit size
  bool compound = false;
  bool pencil_family = false;  // member of L(e,e,e,1)
};

// Searches delta <= m_max + 1 by default; no configuration with m <= m_max
// has a larger member degree.
Int default_delta_max(Int m_max);

std::vector<MinusOneConfiguration> enumerate_configurations(Int m_max, Int delta_max,
                                                            Int e_max = kDefaultEMax);

// Totals that have a form with m0 = 0, reported in that form.
std::vector<System> homogeneous_configurations(Int m_max, Int delta_max);

struct ReductionStep {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  cremona::MultiplicitySequence after;
};

struct Obstruction {
  System curve;       // irreducible class met negatively
  Int intersection = 0;
  Int residual_d = 0;
  Int residual_m0 = 0;
  Int residual_m = 0;
  Int residual_v = 0;
};

struct IrreducibilityResult {
  bool irreducible = false;
  std::string reason;
  cremona::MultiplicitySequence start;
  std::vector<ReductionStep> trace;
  std::optional<Obstruction> obstruction;
};

nlohmann::json to_json(const IrreducibilityResult& r);

// Greedy reduction of a (-1)-class to the line through two points, always
// transforming at the three largest multiplicities.
IrreducibilityResult reduce_to_line(const cremona::MultiplicitySequence& seq);

// Throws std::invalid_argument unless c has L^2 = -1 and genus 0.
IrreducibilityResult is_irreducible_class(const System& c);
IrreducibilityResult is_irreducible_class(const MinusOneClass& c);

// An orbit of irreducible (-1)-curves in the n-point plane.
struct Atom {
  Curve curve;
  Int n = 0;
  Int count = 1;
  std::string origin;

  // Class of the whole orbit as (d, m0, m) over the n points.
  Int total_d() const;
  Int total_m0() const;
  Int total_m() const;
};

// Signed quasi-homogeneous class, used for residuals.
struct QhClass {
  Int d = 0;
  Int m0 = 0;
  Int n = 0;
  Int m = 0;

  Int v() const { return virtual_dim(d, m0, n, m); }
  std::string str() const;
};

struct FixedPart {
  Atom atom;
  Int multiplicity = 0;
  int stage = 0;
};

struct SpecialDecomposition {
  System form;  // the tuple the fixed parts refer to
  std::vector<FixedPart> fixed_parts;
  QhClass residual;
  Int v_gain = 0;  // sum over curves of N(N-1)/2
  Int e_max = 0;
};

nlohmann::json to_json(const SpecialDecomposition& dec);

// The (-1)-classes and configurations needed to analyze systems up to a
// given size.
struct AtomCatalog {
  std::vector<MinusOneClass> classes;
  std::vector<MinusOneConfiguration> configurations;
  Int e_max = 0;
};

AtomCatalog build_catalog(Int d_max, Int n_max);

std::vector<Atom> atoms_for(const AtomCatalog& catalog, Int n, Int d_max, bool allow_mu0);

// Intersection of member curves a[i] and b[j], where i and j are the points
// carrying mu1 (ignored when mu1 == mu2).
Int member_dot(const Atom& a, bool same_odd_point, const Atom& b);

std::optional<SpecialDecomposition> find_special_decomposition(const System& sys,
                                                               const AtomCatalog& catalog);
std::optional<SpecialDecomposition> find_special_decomposition(const System& sys);

}  // namespace qhdim::minus_one
