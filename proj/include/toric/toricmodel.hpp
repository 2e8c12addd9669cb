#pragma once

// Log-linear model matrices, toric ideals and membership tests.

#include <vector>

#include "toric/exactla.hpp"
#include "toric/polyring.hpp"

namespace toric {

// Index sets are sorted, 0-based.
using IndexSet = std::vector<std::size_t>;

IndexSet support(const RatVector& p);
IndexSet support(const std::vector<double>& p, double tol = 0.0);

class ModelMatrix {
 public:
  // Throws PreconditionError when an entry is negative, when (1,...,1) is not
  // in the row span, or when a column is zero and zero columns are not allowed.
  explicit ModelMatrix(IntMatrix a, bool allow_zero_columns = false);

  const IntMatrix& matrix() const noexcept { return a_; }
  std::size_t rows() const noexcept { return a_.rows(); }
  std::size_t cols() const noexcept { return a_.cols(); }
  std::size_t rank() const noexcept { return rank_; }
  const LatticeBasis& kernel() const noexcept { return kernel_; }
  // Row indices where column j is nonzero.
  const IndexSet& column_support(std::size_t j) const { return supports_.at(j); }
  const IntVector& column_sums() const noexcept { return column_sums_; }
  IntVector column(std::size_t j) const { return a_.column(j); }
  // w with A^T w = (1,...,1).
  const RatVector& unit_witness() const noexcept { return unit_witness_; }

  // Columns restricted to `cols`; keeps the (1,...,1) witness.
  ModelMatrix restricted(const IndexSet& cols) const;

 private:
  struct Unchecked {};
  ModelMatrix(IntMatrix a, Unchecked);
  void cache();

  IntMatrix a_;
  std::size_t rank_ = 0;
  LatticeBasis kernel_;
  std::vector<IndexSet> supports_;
  IntVector column_sums_;
  RatVector unit_witness_;
};

// (theta^{a_1}, ..., theta^{a_n}) with 0^0 = 1.
RatVector monomial_map(const ModelMatrix& a, const RatVector& theta);
std::vector<double> monomial_map(const ModelMatrix& a, const std::vector<double>& theta);

// Ring with variables p1..pn unless names are supplied.
RingPtr model_ring(const ModelMatrix& a, std::vector<std::string> names = {});

// Binomials x^{u+} - x^{u-} of a lattice basis, then saturated.
PolyIdeal toric_ideal(const ModelMatrix& a, const RingPtr& ring);
inline PolyIdeal toric_ideal(const ModelMatrix& a) { return toric_ideal(a, model_ring(a)); }

bool is_A_feasible(const ModelMatrix& a, const RatVector& p);
// Lattice test p^{u+} = p^{u-} for a strictly positive vector.
bool lattice_membership(const ModelMatrix& a, const RatVector& p_positive);
bool variety_membership(const ModelMatrix& a, const RatVector& p);
bool in_image(const ModelMatrix& a, const RatVector& p);
// Largest |sum_i u_i log p_i| over the kernel basis, for positive float points.
double variety_residual(const ModelMatrix& a, const std::vector<double>& p);

}  // namespace toric
