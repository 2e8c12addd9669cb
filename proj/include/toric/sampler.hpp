#pragma once

// Moment-map inversion, samplers over the model and its branch locus, and a
// grid-scan completion counter used as an independent oracle.

#include <cstdint>
#include <string>
#include <vector>

#include "toric/completion.hpp"
#include "toric/toricmodel.hpp"

namespace toric {

struct SampleConfig {
  std::uint64_t seed = 0;
  std::size_t count = 100;
  double tolerance = 1e-11;
  std::size_t max_iterations = 100000;
  double log_box = 2.0;  // log theta uniform in [-log_box, log_box]
};

// Stateless generator: the value at (seed, stream, index) never changes.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {}
  std::uint64_t bits(std::uint64_t index) const;
  // Uniform in (0, 1).
  double uniform(std::uint64_t index) const;
  double uniform(std::uint64_t index, double lo, double hi) const {
    return lo + (hi - lo) * uniform(index);
  }
  CounterRng substream(std::uint64_t s) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
};

struct IpsResult {
  std::vector<double> p;
  std::size_t iterations = 0;
  double residual = 0.0;  // sup norm of Ap - b
  IndexSet face;          // support of p
};

// p on the model with Ap = b. Throws DomainError when b is outside P_A and
// ConvergenceError when the iteration limit is hit.
IpsResult ips_fit(const ModelMatrix& a, const RatVector& b, const SampleConfig& cfg = {});
IpsResult ips_fit(const ModelMatrix& a, const std::vector<double>& b, const SampleConfig& cfg = {});

// Positive model points phi(theta) / sum, theta log-uniform.
std::vector<std::vector<double>> sample_model(const ModelMatrix& a, const SampleConfig& cfg);
// Points chi_F * phi(theta), normalized; supported exactly on `face`.
std::vector<std::vector<double>> sample_face(const ModelMatrix& a, const IndexSet& face,
                                             const SampleConfig& cfg);

struct BranchSamples {
  std::vector<std::vector<double>> points;
  std::string reason;  // set when the branch locus is empty
};

BranchSamples sample_branch_locus(const ModelMatrix& a, const ObservedSet& e,
                                  const SampleConfig& cfg);

struct OracleCount {
  int count = 0;
  double grid_min = 0.0;  // smallest value of the section minus 1 on the scan
};

// Counts solutions of sum_i q_i exp(nu_i t) = 1 along a fiber by scanning a
// grid; q is a basic (not minimum-norm) lift.
OracleCount brute_force_completions(const ModelMatrix& a, const ObservedSet& e,
                                    const std::vector<double>& p_e, std::size_t grid = 4000);

}  // namespace toric
