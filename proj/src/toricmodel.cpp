#include "toric/toricmodel.hpp"

#include <cmath>

#include "toric/errors.hpp"
#include "toric/geometry.hpp"

namespace toric {

IndexSet support(const RatVector& p) {
  IndexSet s;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (sgn(p[i]) != 0) s.push_back(i);
  return s;
}

IndexSet support(const std::vector<double>& p, double tol) {
  IndexSet s;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (std::abs(p[i]) > tol) s.push_back(i);
  return s;
}

ModelMatrix::ModelMatrix(IntMatrix a, bool allow_zero_columns) : a_(std::move(a)) {
  if (a_.empty()) throw PreconditionError("model matrix must be non-empty");
  for (std::size_t r = 0; r < a_.rows(); ++r)
    for (std::size_t c = 0; c < a_.cols(); ++c)
      if (sgn(a_(r, c)) < 0) throw PreconditionError("model matrix has a negative entry");
  cache();
  if (!allow_zero_columns) {
    for (std::size_t j = 0; j < cols(); ++j)
      if (supports_[j].empty())
        throw PreconditionError("column " + std::to_string(j + 1) + " of A is zero");
  }
  auto w = solve_rational(a_.transposed(), RatVector(cols(), Rational(1)));
  if (!w) throw PreconditionError("(1,...,1) is not in the row span of A");
  unit_witness_ = std::move(*w);
}

ModelMatrix::ModelMatrix(IntMatrix a, Unchecked) : a_(std::move(a)) { cache(); }

void ModelMatrix::cache() {
  rank_ = toric::rank(a_);
  kernel_ = integer_kernel_basis(a_);
  supports_.assign(cols(), {});
  column_sums_.assign(cols(), 0);
  for (std::size_t c = 0; c < cols(); ++c)
    for (std::size_t r = 0; r < rows(); ++r) {
      if (sgn(a_(r, c)) != 0) supports_[c].push_back(r);
      column_sums_[c] += a_(r, c);
    }
}

ModelMatrix ModelMatrix::restricted(const IndexSet& cols) const {
  ModelMatrix m(a_.select_columns(cols), Unchecked{});
  m.unit_witness_ = unit_witness_;
  return m;
}

RatVector monomial_map(const ModelMatrix& a, const RatVector& theta) {
  if (theta.size() != a.rows()) throw PreconditionError("theta has wrong length");
  RatVector p(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    Rational v = 1;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      const unsigned long e = a.matrix()(r, j).get_ui();
      if (e == 0) continue;
      mpz_class num, den;
      mpz_pow_ui(num.get_mpz_t(), theta[r].get_num_mpz_t(), e);
      mpz_pow_ui(den.get_mpz_t(), theta[r].get_den_mpz_t(), e);
      v *= Rational(num, den);
    }
    v.canonicalize();
    p[j] = v;
  }
  return p;
}

std::vector<double> monomial_map(const ModelMatrix& a, const std::vector<double>& theta) {
  if (theta.size() != a.rows()) throw PreconditionError("theta has wrong length");
  std::vector<double> p(a.cols(), 1.0);
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t r = 0; r < a.rows(); ++r) {
      const double e = a.matrix()(r, j).get_d();
      if (e != 0) p[j] *= std::pow(theta[r], e);
    }
  return p;
}

RingPtr model_ring(const ModelMatrix& a, std::vector<std::string> names) {
  if (names.empty()) return Ring::numbered(a.cols(), "p");
  if (names.size() != a.cols()) throw PreconditionError("need one variable name per column");
  return Ring::make(std::move(names));
}

PolyIdeal toric_ideal(const ModelMatrix& a, const RingPtr& ring) {
  if (ring->size() != a.cols()) throw PreconditionError("ring size differs from column count");
  std::vector<Polynomial> binomials;
  for (const auto& u : a.kernel()) {
    std::vector<std::uint32_t> pos(u.size(), 0), neg(u.size(), 0);
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (sgn(u[i]) > 0) pos[i] = static_cast<std::uint32_t>(u[i].get_ui());
      if (sgn(u[i]) < 0) neg[i] = static_cast<std::uint32_t>(mpz_class(-u[i]).get_ui());
    }
    binomials.push_back(Polynomial::monomial(ring, Monomial(pos)) -
                        Polynomial::monomial(ring, Monomial(neg)));
  }
  if (binomials.empty()) return PolyIdeal(ring);
  PolyIdeal sat = saturate_by_coordinates(PolyIdeal(ring, std::move(binomials)));
  return PolyIdeal(ring, minimal_generators(sat));
}

bool is_A_feasible(const ModelMatrix& a, const RatVector& p) {
  if (p.size() != a.cols()) throw PreconditionError("point has wrong length");
  std::vector<bool> covered(a.rows(), false);
  for (std::size_t l : support(p))
    for (std::size_t r : a.column_support(l)) covered[r] = true;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    if (sgn(p[j]) != 0) continue;
    bool inside = true;
    for (std::size_t r : a.column_support(j)) inside = inside && covered[r];
    if (inside) return false;
  }
  return true;
}

namespace {

Rational power(const Rational& q, unsigned long e) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), e);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace

bool lattice_membership(const ModelMatrix& a, const RatVector& p) {
  if (p.size() != a.cols()) throw PreconditionError("point has wrong length");
  for (const auto& u : a.kernel()) {
    Rational lhs = 1, rhs = 1;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (sgn(u[i]) > 0) lhs *= power(p[i], u[i].get_ui());
      if (sgn(u[i]) < 0) rhs *= power(p[i], mpz_class(-u[i]).get_ui());
    }
    if (lhs != rhs) return false;
  }
  return true;
}

bool variety_membership(const ModelMatrix& a, const RatVector& p) {
  if (p.size() != a.cols()) throw PreconditionError("point has wrong length");
  for (const auto& x : p)
    if (sgn(x) < 0) throw PreconditionError("variety_membership expects p >= 0");
  const IndexSet s = support(p);
  if (s.size() == p.size()) return lattice_membership(a, p);
  if (!is_facial_set(a, s)) return false;
  if (s.empty()) return true;
  RatVector sub;
  for (std::size_t i : s) sub.push_back(p[i]);
  return lattice_membership(a.restricted(s), sub);
}

bool in_image(const ModelMatrix& a, const RatVector& p) {
  return variety_membership(a, p) && is_A_feasible(a, p);
}

double variety_residual(const ModelMatrix& a, const std::vector<double>& p) {
  if (p.size() != a.cols()) throw PreconditionError("point has wrong length");
  double worst = 0.0;
  for (const auto& u : a.kernel()) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
      if (sgn(u[i]) != 0) s += u[i].get_d() * std::log(p[i]);
    worst = std::max(worst, std::abs(s));
  }
  return worst;
}

}  // namespace toric
