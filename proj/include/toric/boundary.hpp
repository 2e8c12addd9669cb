#pragma once

// Defining polynomials of the algebraic boundary of the completable region.

#include <string>
#include <vector>

#include "toric/completion.hpp"
#include "toric/polyring.hpp"
#include "toric/sampler.hpp"
#include "toric/toricmodel.hpp"

namespace toric {

// Ring on the observed variables, named after their names in `full`.
RingPtr observed_ring(const RingPtr& full, const IndexSet& e);

struct Eliminant {
  PolyIdeal ideal;                    // in observed_ring
  bool principal = false;
  // Square-free factors when principal, with monomial parts split into
  // single coordinates.
  std::vector<Polynomial> factors;
  // Radical generators when the ideal is generated by monomials.
  std::vector<Polynomial> monomial_radical;
  bool empty_locus = false;           // branch locus empty: zero ideal
  std::string note;

  explicit Eliminant(RingPtr ring) : ideal(std::move(ring)) {}
};

// J = I_A + <sum x - 1, nu^T x>, eliminating the unobserved variables.
Eliminant branch_image_eliminant(const ModelMatrix& a, const ObservedSet& e, const RingPtr& full);
// I_A + <sum x - 1, prod x>, eliminating the unobserved variables.
Eliminant model_boundary_eliminant(const ModelMatrix& a, const ObservedSet& e,
                                   const RingPtr& full);

enum class Verdict { kVanishing, kSpurious, kInconclusive };
std::string to_string(Verdict v);

struct Validation {
  Verdict verdict = Verdict::kInconclusive;
  double vanishing_fraction = 0.0;
  std::size_t samples = 0;
};

inline constexpr double kVanishingTolerance = 1e-8;
inline constexpr double kVanishingFraction = 0.95;

// |f(s)| <= tol * (l1 norm of coefficients) on at least `fraction` of samples.
Validation validate_component_by_sampling(const Polynomial& factor,
                                          const std::vector<std::vector<double>>& samples,
                                          double tol = kVanishingTolerance,
                                          double fraction = kVanishingFraction);

struct FactorReport {
  Polynomial factor;
  std::string source;  // "branch" or "model-boundary"
  Validation validation;
};

struct BoundaryReport {
  RingPtr ring;  // observed variables
  Eliminant branch;
  Eliminant model_boundary;
  // Radical of the product when both eliminants are principal (or the
  // branch locus is empty): its square-free factors.
  std::vector<Polynomial> radical_factors;
  bool radical_gap = false;  // some eliminant is not principal
  std::vector<FactorReport> factors;

  explicit BoundaryReport(RingPtr r) : ring(r), branch(r), model_boundary(r) {}
};

// Validation samples: branch factors on pi_E of branch-locus samples, model
// boundary factors on pi_E of samples from each facet.
BoundaryReport algebraic_boundary(const ModelMatrix& a, const ObservedSet& e, const RingPtr& full,
                                  const SampleConfig& cfg = {});

}  // namespace toric
