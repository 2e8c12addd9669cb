#pragma once

// Exact linear programming and the facial structure of the polytope P_A.

#include <optional>
#include <vector>

#include "toric/exactla.hpp"
#include "toric/toricmodel.hpp"

namespace toric {

enum class Relation { kEq, kGe, kLe };

// minimize objective^T x subject to rows[i] x (rel) rhs[i]; x_j >= 0 unless
// free_vars[j]. An empty objective means a pure feasibility problem.
struct RationalLP {
  std::size_t nvars = 0;
  std::vector<bool> free_vars;
  std::vector<RatVector> rows;
  std::vector<Relation> relations;
  RatVector rhs;
  RatVector objective;

  void add(RatVector row, Relation rel, Rational b);
};

enum class LPStatus { kOptimal, kInfeasible, kUnbounded };

struct LPSolution {
  LPStatus status = LPStatus::kInfeasible;
  RatVector x;
  Rational value;
};

// Two-phase simplex over Q with Bland's rule.
LPSolution solve_lp(const RationalLP& lp);

struct FacialSet {
  IndexSet indices;
  RatVector inner_normal;             // v^T a_i = 0 on F, >= 1 off F
  std::vector<int> characteristic;    // chi_F

  bool contains(std::size_t i) const;
};

std::vector<int> characteristic_vector(const IndexSet& f, std::size_t n);

std::optional<RatVector> is_facial_set(const ModelMatrix& a, const IndexSet& f);
FacialSet minimal_facial_set(const ModelMatrix& a, const IndexSet& s);

inline constexpr std::size_t kDefaultFacialBound = 20;
// Every facial set, ordered by size and then lexicographically. Throws
// CapacityError when n exceeds the bound.
std::vector<FacialSet> all_facial_sets(const ModelMatrix& a,
                                       std::size_t bound = kDefaultFacialBound);

RatVector moment_map(const ModelMatrix& a, const RatVector& p);
std::vector<double> moment_map(const ModelMatrix& a, const std::vector<double>& p);

// q in conv(columns of A)?
bool in_polytope(const ModelMatrix& a, const RatVector& q);
// Columns carrying weight in some convex representation of q; this is the
// facial set of the smallest face of P_A containing q. Empty when q is
// outside P_A.
std::optional<IndexSet> face_of_point(const ModelMatrix& a, const RatVector& q);
bool in_span_cap_polytope(const ModelMatrix& a, const IndexSet& e, const RatVector& q);

}  // namespace toric
