#pragma once

// Exact integer and rational linear algebra on top of GMP.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace toric {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
// mpq_class keeps every entry canonical: positive denominator, lowest terms.
using RatVector = std::vector<Rational>;

// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);
  static IntMatrix from_rows(const std::vector<IntVector>& rows);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  IntVector row(std::size_t r) const;
  IntVector column(std::size_t c) const;
  IntMatrix transposed() const;
  // Submatrix keeping the listed columns, in the given order.
  IntMatrix select_columns(const std::vector<std::size_t>& cols) const;

  IntVector operator*(const IntVector& x) const;
  RatVector operator*(const RatVector& x) const;
  IntMatrix operator*(const IntMatrix& other) const;

  bool operator==(const IntMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

std::string to_string(const IntMatrix& m);

struct HermiteResult {
  IntMatrix H;  // row-style Hermite normal form
  IntMatrix U;  // unimodular, U * M == H
};

// Row-style Hermite normal form: H is in row echelon form, every pivot is
// positive and the entries above a pivot lie in [0, pivot).
HermiteResult hermite_normal_form(const IntMatrix& m);

// Basis of {u in Z^cols : M u = 0}. The basis is the nonzero rows of the
// Hermite normal form of any kernel basis, so it is canonical; every vector
// is primitive.
using LatticeBasis = std::vector<IntVector>;
LatticeBasis integer_kernel_basis(const IntMatrix& m);

// Rank over Q.
std::size_t rank(const IntMatrix& m);

// One exact solution of M x = b. Free variables are set to zero with pivots
// chosen in column order. Returns nullopt when the system is inconsistent.
std::optional<RatVector> solve_rational(const IntMatrix& m, const RatVector& b);

// Vectors helpers.
Integer content(const IntVector& v);
bool is_zero(const IntVector& v);
bool is_zero(const RatVector& v);
RatVector to_rational(const IntVector& v);
Rational dot(const IntVector& a, const RatVector& b);
Integer dot(const IntVector& a, const IntVector& b);

// Rational text format "a/b", with "/b" omitted when b == 1. Parsing also
// accepts plain decimals such as "0.125", which are converted exactly.
std::string format_rational(const Rational& q);
Rational parse_rational(std::string_view text);
std::string format_vector(const RatVector& v, std::string_view sep = " ");
std::string format_vector(const IntVector& v, std::string_view sep = " ");

}  // namespace toric
