#pragma once

// Completing partial observations to the log-linear model.

#include <optional>
#include <string>
#include <vector>

#include "toric/exactla.hpp"
#include "toric/geometry.hpp"
#include "toric/toricmodel.hpp"

namespace toric {

class ObservedSet {
 public:
  ObservedSet(const ModelMatrix& a, IndexSet e);

  const IndexSet& indices() const noexcept { return e_; }
  std::size_t size() const noexcept { return e_.size(); }
  const IntMatrix& a_e() const noexcept { return a_e_; }
  std::size_t rank_a_e() const noexcept { return rank_a_e_; }
  std::size_t rank_a() const noexcept { return rank_a_; }
  // |E| = rank A_E = rank A - 1
  bool rank_ok() const noexcept { return rank_ok_; }
  // Which equality fails, empty when rank_ok().
  std::string rank_failure() const;
  bool in_proper_facial_set() const noexcept { return proper_; }
  const FacialSet& minimal_face() const noexcept { return face_; }
  bool contains(std::size_t i) const;
  // Throws PreconditionError unless rank_ok().
  void require_rank_ok() const;

 private:
  IndexSet e_;
  IntMatrix a_e_;
  std::size_t n_ = 0;
  std::size_t rank_a_e_ = 0;
  std::size_t rank_a_ = 0;
  bool rank_ok_ = false;
  bool proper_ = false;
  FacialSet face_;
};

struct BranchVector {
  IntVector nu;      // primitive, first nonzero entry positive
  RatVector omega;   // nu = A^T omega, omega in ker A_E^T
  // nu >= 0: E lies in the proper facial set {i : nu_i = 0}.
  bool nonnegative = false;
};

BranchVector branch_vector(const ModelMatrix& a, const ObservedSet& e);

struct ToricCompletability {
  bool completable = false;
  FacialSet witness;  // minimal facial set of supp(p_E)
  std::string reason;
};

ToricCompletability completable_to_toric(const ModelMatrix& a, const ObservedSet& e,
                                         const RatVector& p_e);

// Positive point of X_A with pi_E(q) = p_E, from the minimum-norm solution of
// A_E^T v = log p_E. Throws DomainError when p_E is not on X_{A_E}.
std::vector<double> lift_positive(const ModelMatrix& a, const ObservedSet& e,
                                  const RatVector& p_e);

// t -> sum_i q_i exp(nu_i t)
struct ExponentialSection {
  std::vector<double> q;
  std::vector<double> nu;

  double value(double t) const;
  double slope(double t) const;
  double curvature(double t) const;
  // Limit of value(t) as t -> -infinity when nu >= 0.
  double floor_mass() const;
};

struct SectionRoots {
  std::vector<double> roots;  // ascending
  bool tangency = false;
  double minimum = 0.0;       // inf of the section (floor mass when monotone)
  double argmin = 0.0;        // unused when monotone
  bool monotone = false;
};

inline constexpr double kSectionTolerance = 1e-13;

// All real t with value(t) = 1. For nu >= 0 only the increasing branch is
// searched; the t -> -infinity limit is left to the caller.
SectionRoots solve_section(const ExponentialSection& s, double tol = kSectionTolerance);

enum class Classification { kOutside, kInteriorTwo, kInteriorOne, kBoundaryBranch, kBoundaryFacet };
std::string to_string(Classification c);

struct Completion {
  std::vector<double> point;
  std::optional<RatVector> exact;  // set when certified
  double t = 0.0;                  // -inf for the facet limit
  double nu_dot = 0.0;             // nu^T point
  std::optional<Rational> nu_dot_exact;
  double sum_residual = 0.0;       // |sum - 1|
};

struct CompletionOptions {
  double section_tol = kSectionTolerance;
  double coordinate_tol = 1e-12;
  long max_denominator = 1000000;
  bool certify = true;
};

struct CompletionResult {
  Classification classification = Classification::kOutside;
  std::vector<Completion> completions;
  BranchVector branch;
  std::vector<double> base;   // the lift q
  SectionRoots section;
  double lift_residual = 0.0; // max relative error of pi_E(q) against p_E
  // Facet case only.
  bool facet_case = false;
  std::optional<Rational> facet_mass_exact;
  double facet_mass = 0.0;
  bool facet_mass_within_tolerance = false;  // decided numerically, not exactly
  std::string reason;
};

CompletionResult enumerate_completions(const ModelMatrix& a, const ObservedSet& e,
                                       const RatVector& p_e, const CompletionOptions& opt = {});

enum class Region { kInterior, kBoundary, kOutside };
enum class Provenance { kNone, kBranchImage, kModelBoundaryImage };
struct RegionLabel {
  Region region = Region::kOutside;
  Provenance provenance = Provenance::kNone;
};
std::string to_string(Region r);
std::string to_string(Provenance p);

RegionLabel classify(const CompletionResult& r);
RegionLabel classify_observation(const ModelMatrix& a, const ObservedSet& e, const RatVector& p_e,
                                 const CompletionOptions& opt = {});

// Continued-fraction reconstruction: the first convergent with denominator
// <= max_den whose relative error is <= rel_tol.
std::optional<Rational> reconstruct_rational(double x, long max_den, double rel_tol);

}  // namespace toric
