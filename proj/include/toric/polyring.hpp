#pragma once

// Multivariate polynomials over Q, Groebner bases, elimination and
// square-free decomposition.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "toric/exactla.hpp"

namespace toric {

// Ordered list of variable names shared by all polynomials of a ring.
class Ring {
 public:
  explicit Ring(std::vector<std::string> names);
  static std::shared_ptr<const Ring> make(std::vector<std::string> names);
  // x1, ..., xn
  static std::shared_ptr<const Ring> numbered(std::size_t n, std::string_view prefix = "x");

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  // Throws ParseError for unknown names.
  std::size_t index_of(std::string_view name) const;
  bool operator==(const Ring& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const Ring>;

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps);

  std::size_t size() const noexcept { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  std::uint32_t degree() const noexcept { return degree_; }
  const std::vector<std::uint32_t>& exponents() const noexcept { return exps_; }
  bool is_one() const noexcept { return degree_ == 0; }

  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  // Requires d.divides(*this).
  Monomial operator/(const Monomial& d) const;
  Monomial lcm(const Monomial& other) const;
  Monomial gcd(const Monomial& other) const;
  bool coprime(const Monomial& other) const;

  bool operator==(const Monomial& other) const { return exps_ == other.exps_; }

 private:
  std::vector<std::uint32_t> exps_;
  std::uint32_t degree_ = 0;
};

class MonomialOrder {
 public:
  enum class Kind { kLex, kGRevLex, kBlockElimination };

  static MonomialOrder lex() { return MonomialOrder(Kind::kLex, {}); }
  static MonomialOrder grevlex() { return MonomialOrder(Kind::kGRevLex, {}); }
  // Lex on the dropped variables, ties broken by grevlex on the rest.
  static MonomialOrder elimination(std::vector<bool> drop) {
    return MonomialOrder(Kind::kBlockElimination, std::move(drop));
  }

  Kind kind() const noexcept { return kind_; }
  const std::vector<bool>& dropped() const noexcept { return drop_; }
  // Negative, zero or positive as a < b, a == b, a > b.
  int compare(const Monomial& a, const Monomial& b) const;
  std::string key() const;
  bool operator==(const MonomialOrder& other) const = default;

 private:
  MonomialOrder(Kind kind, std::vector<bool> drop) : kind_(kind), drop_(std::move(drop)) {}
  Kind kind_;
  std::vector<bool> drop_;
};

struct Term {
  Monomial monomial;
  Rational coeff;
};

class Polynomial {
 public:
  explicit Polynomial(RingPtr ring);
  static Polynomial constant(RingPtr ring, const Rational& c);
  static Polynomial variable(RingPtr ring, std::size_t index);
  static Polynomial monomial(RingPtr ring, const Monomial& m, const Rational& c = 1);
  // Combines like terms and drops zeros.
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const noexcept { return ring_; }
  std::size_t nvars() const { return ring_->size(); }
  // Terms in descending grevlex order.
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t num_terms() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  std::uint32_t total_degree() const;
  bool uses_variable(std::size_t i) const;
  bool is_homogeneous() const;
  // Leading term under an arbitrary order.
  const Term& leading_term(const MonomialOrder& order) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rational& c) const;
  Polynomial pow(unsigned e) const;
  Polynomial derivative(std::size_t var) const;

  Rational evaluate(const RatVector& point) const;
  double evaluate(const std::vector<double>& point) const;
  Rational coefficient_norm_l1() const;

  // Integer coefficients with content 1 and positive coefficient on the
  // lexicographically largest monomial. Zero stays zero.
  Polynomial normalized() const;
  // Same polynomial in a ring whose first nvars() variables agree with ours.
  Polynomial embed(RingPtr target) const;
  // Map variable i of this ring to variable mapping[i] of target.
  Polynomial rename(RingPtr target, const std::vector<std::size_t>& mapping) const;

  bool operator==(const Polynomial& o) const;

 private:
  RingPtr ring_;
  std::vector<Term> terms_;
};

std::string to_string(const Polynomial& f);
// Sum-of-terms syntax: integers, a/b coefficients, '*', '^', parentheses,
// unary minus. Variables must belong to the ring.
Polynomial parse_polynomial(std::string_view text, RingPtr ring);

// Reduced Groebner basis. Elements are normalized(), sorted by ascending
// leading monomial under the order.
std::vector<Polynomial> buchberger(const std::vector<Polynomial>& gens,
                                   const MonomialOrder& order);
// Remainder of f modulo a Groebner basis under the same order.
Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis,
                       const MonomialOrder& order);

class PolyIdeal {
 public:
  explicit PolyIdeal(RingPtr ring, std::vector<Polynomial> gens = {});

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<Polynomial>& generators() const noexcept { return gens_; }
  // Computed once per order and cached.
  const std::vector<Polynomial>& groebner_basis(const MonomialOrder& order) const;

  bool contains(const Polynomial& f) const;
  bool contains(const PolyIdeal& other) const;
  bool same_ideal(const PolyIdeal& other) const;
  bool is_zero() const;
  bool is_unit() const;
  // Single generator after reduction (zero ideal counts as principal).
  bool is_principal() const;

  PolyIdeal operator+(const PolyIdeal& other) const;
  PolyIdeal with(const std::vector<Polynomial>& extra) const;

 private:
  struct Cache {
    std::mutex mutex;
    std::map<std::string, std::vector<Polynomial>> bases;
  };
  RingPtr ring_;
  std::vector<Polynomial> gens_;
  std::shared_ptr<Cache> cache_;
};

// I intersected with Q[remaining variables]. Generators are the reduced
// elimination-order basis elements free of the dropped variables.
PolyIdeal eliminate(const PolyIdeal& ideal, const std::vector<std::size_t>& drop);
// I : (x_1 ... x_n)^infinity via one auxiliary variable.
PolyIdeal saturate_by_coordinates(const PolyIdeal& ideal);
// A generating subset of the reduced grevlex basis, minimal when the ideal is
// homogeneous.
std::vector<Polynomial> minimal_generators(const PolyIdeal& ideal);

Polynomial polynomial_gcd(const Polynomial& f, const Polynomial& g);
// f / g when g divides f exactly.
std::optional<Polynomial> divide_exact(const Polynomial& f, const Polynomial& g);
// Square-free decomposition f = c * s_1 * s_2^2 * ... ; returns the
// non-constant s_i in order of increasing multiplicity, normalized.
std::vector<Polynomial> squarefree_part(const Polynomial& f);

}  // namespace toric
