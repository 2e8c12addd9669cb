#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "toric/errors.hpp"
#include "toric/polyring.hpp"

namespace toric {

// ---------------------------------------------------------------- Ring

Ring::Ring(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i)
    for (std::size_t j = i + 1; j < names_.size(); ++j)
      if (names_[i] == names_[j])
        throw PreconditionError("duplicate variable name '" + names_[i] + "'");
}

RingPtr Ring::make(std::vector<std::string> names) {
  return std::make_shared<const Ring>(std::move(names));
}

RingPtr Ring::numbered(std::size_t n, std::string_view prefix) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back(std::string(prefix) + std::to_string(i));
  return make(std::move(names));
}

std::size_t Ring::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  throw ParseError("unknown variable '" + std::string(name) + "'");
}

// ------------------------------------------------------------ Monomial

Monomial::Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {
  degree_ = std::accumulate(exps_.begin(), exps_.end(), std::uint32_t{0});
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r = *this;
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += other.exps_[i];
  r.degree_ += other.degree_;
  return r;
}

Monomial Monomial::operator/(const Monomial& d) const {
  Monomial r = *this;
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= d.exps_[i];
  r.degree_ -= d.degree_;
  return r;
}

Monomial Monomial::lcm(const Monomial& other) const {
  std::vector<std::uint32_t> e(exps_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::max(exps_[i], other.exps_[i]);
  return Monomial(std::move(e));
}

Monomial Monomial::gcd(const Monomial& other) const {
  std::vector<std::uint32_t> e(exps_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::min(exps_[i], other.exps_[i]);
  return Monomial(std::move(e));
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] != 0 && other.exps_[i] != 0) return false;
  return true;
}

// ------------------------------------------------------- MonomialOrder

namespace {

int compare_lex(const Monomial& a, const Monomial& b, const std::vector<bool>* mask,
                bool want) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (mask && (*mask)[i] != want) continue;
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

int compare_grevlex(const Monomial& a, const Monomial& b, const std::vector<bool>* mask,
                    bool want) {
  std::uint64_t da = 0, db = 0;
  if (mask) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if ((*mask)[i] == want) {
        da += a[i];
        db += b[i];
      }
  } else {
    da = a.degree();
    db = b.degree();
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (mask && (*mask)[i] != want) continue;
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  switch (kind_) {
    case Kind::kLex:
      return compare_lex(a, b, nullptr, true);
    case Kind::kGRevLex:
      return compare_grevlex(a, b, nullptr, true);
    case Kind::kBlockElimination: {
      if (int c = compare_lex(a, b, &drop_, true)) return c;
      return compare_grevlex(a, b, &drop_, false);
    }
  }
  return 0;
}

std::string MonomialOrder::key() const {
  switch (kind_) {
    case Kind::kLex:
      return "lex";
    case Kind::kGRevLex:
      return "grevlex";
    case Kind::kBlockElimination: {
      std::string k = "elim:";
      for (bool b : drop_) k.push_back(b ? '1' : '0');
      return k;
    }
  }
  return {};
}

// ---------------------------------------------------------- Polynomial

namespace {

const MonomialOrder kCanonical = MonomialOrder::grevlex();

bool canonical_greater(const Monomial& a, const Monomial& b) {
  return kCanonical.compare(a, b) > 0;
}

void check_same_ring(const Polynomial& a, const Polynomial& b) {
  if (a.ring() != b.ring() && !(*a.ring() == *b.ring()))
    throw PreconditionError("polynomials live in different rings");
}

}  // namespace

Polynomial::Polynomial(RingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) throw PreconditionError("polynomial needs a ring");
}

Polynomial Polynomial::constant(RingPtr ring, const Rational& c) {
  Polynomial p(ring);
  if (sgn(c) != 0) p.terms_.push_back({Monomial(ring->size()), c});
  return p;
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t index) {
  std::vector<std::uint32_t> e(ring->size(), 0);
  e.at(index) = 1;
  return monomial(ring, Monomial(std::move(e)));
}

Polynomial Polynomial::monomial(RingPtr ring, const Monomial& m, const Rational& c) {
  if (m.size() != ring->size()) throw PreconditionError("monomial has wrong arity");
  Polynomial p(std::move(ring));
  if (sgn(c) != 0) p.terms_.push_back({m, c});
  return p;
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms) {
  Polynomial p(ring);
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    return canonical_greater(a.monomial, b.monomial);
  });
  for (auto& t : terms) {
    if (t.monomial.size() != ring->size()) throw PreconditionError("term has wrong arity");
    if (!p.terms_.empty() && p.terms_.back().monomial == t.monomial) {
      p.terms_.back().coeff += t.coeff;
      if (sgn(p.terms_.back().coeff) == 0) p.terms_.pop_back();
    } else if (sgn(t.coeff) != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

bool Polynomial::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one());
}

std::uint32_t Polynomial::total_degree() const {
  return terms_.empty() ? 0 : terms_.front().monomial.degree();
}

bool Polynomial::uses_variable(std::size_t i) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [i](const Term& t) { return t.monomial[i] != 0; });
}

bool Polynomial::is_homogeneous() const {
  return std::all_of(terms_.begin(), terms_.end(), [&](const Term& t) {
    return t.monomial.degree() == terms_.front().monomial.degree();
  });
}

const Term& Polynomial::leading_term(const MonomialOrder& order) const {
  if (terms_.empty()) throw PreconditionError("zero polynomial has no leading term");
  const Term* best = &terms_.front();
  for (const auto& t : terms_)
    if (order.compare(t.monomial, best->monomial) > 0) best = &t;
  return *best;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  check_same_ring(*this, o);
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() ||
        (i < terms_.size() && canonical_greater(terms_[i].monomial, o.terms_[j].monomial))) {
      r.terms_.push_back(terms_[i++]);
    } else if (i == terms_.size() ||
               canonical_greater(o.terms_[j].monomial, terms_[i].monomial)) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      Rational c = terms_[i].coeff + o.terms_[j].coeff;
      if (sgn(c) != 0) r.terms_.push_back({terms_[i].monomial, c});
      ++i;
      ++j;
    }
  }
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Rational& c) const {
  if (sgn(c) == 0) return Polynomial(ring_);
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  check_same_ring(*this, o);
  std::vector<Term> prod;
  prod.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) prod.push_back({a.monomial * b.monomial, a.coeff * b.coeff});
  return from_terms(ring_, std::move(prod));
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(ring_, 1);
  Polynomial base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    const std::uint32_t e = t.monomial[var];
    if (e == 0) continue;
    std::vector<std::uint32_t> exps = t.monomial.exponents();
    exps[var] -= 1;
    out.push_back({Monomial(std::move(exps)), t.coeff * e});
  }
  return from_terms(ring_, std::move(out));
}

Rational Polynomial::evaluate(const RatVector& point) const {
  if (point.size() != nvars()) throw PreconditionError("evaluation point has wrong length");
  Rational sum = 0;
  for (const auto& t : terms_) {
    Rational v = t.coeff;
    for (std::size_t i = 0; i < point.size(); ++i) {
      for (std::uint32_t k = 0; k < t.monomial[i]; ++k) v *= point[i];
    }
    sum += v;
  }
  return sum;
}

double Polynomial::evaluate(const std::vector<double>& point) const {
  if (point.size() != nvars()) throw PreconditionError("evaluation point has wrong length");
  double sum = 0.0;
  for (const auto& t : terms_) {
    double v = t.coeff.get_d();
    for (std::size_t i = 0; i < point.size(); ++i)
      for (std::uint32_t k = 0; k < t.monomial[i]; ++k) v *= point[i];
    sum += v;
  }
  return sum;
}

Rational Polynomial::coefficient_norm_l1() const {
  Rational s = 0;
  for (const auto& t : terms_) s += abs(t.coeff);
  return s;
}

Polynomial Polynomial::normalized() const {
  if (terms_.empty()) return *this;
  Integer den = 1;
  for (const auto& t : terms_) den = lcm(den, Integer(t.coeff.get_den()));
  Integer num_gcd = 0;
  for (const auto& t : terms_) num_gcd = gcd(num_gcd, Integer(t.coeff.get_num() * (den / t.coeff.get_den())));
  Rational scale(den, num_gcd);
  scale.canonicalize();
  const Term& lead = leading_term(MonomialOrder::lex());
  if (sgn(lead.coeff) < 0) scale = -scale;
  return *this * scale;
}

Polynomial Polynomial::embed(RingPtr target) const {
  if (target->size() < nvars()) throw PreconditionError("embed target ring too small");
  Polynomial r(target);
  for (const auto& t : terms_) {
    std::vector<std::uint32_t> e = t.monomial.exponents();
    e.resize(target->size(), 0);
    r.terms_.push_back({Monomial(std::move(e)), t.coeff});
  }
  // appending zero exponents preserves grevlex order
  return r;
}

Polynomial Polynomial::rename(RingPtr target, const std::vector<std::size_t>& mapping) const {
  if (mapping.size() != nvars()) throw PreconditionError("rename mapping has wrong length");
  std::vector<Term> out;
  for (const auto& t : terms_) {
    std::vector<std::uint32_t> e(target->size(), 0);
    for (std::size_t i = 0; i < mapping.size(); ++i) {
      if (t.monomial[i] == 0) continue;
      if (mapping[i] >= target->size()) throw PreconditionError("rename drops a used variable");
      e[mapping[i]] += t.monomial[i];
    }
    out.push_back({Monomial(std::move(e)), t.coeff});
  }
  return from_terms(std::move(target), std::move(out));
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (!(terms_[i].monomial == o.terms_[i].monomial) || terms_[i].coeff != o.terms_[i].coeff)
      return false;
  return true;
}

// ----------------------------------------------------------- printing

std::string to_string(const Polynomial& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : f.terms()) {
    const bool neg = sgn(t.coeff) < 0;
    if (first) {
      if (neg) os << '-';
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    const Rational a = abs(t.coeff);
    std::string mono;
    for (std::size_t i = 0; i < t.monomial.size(); ++i) {
      if (t.monomial[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += f.ring()->name(i);
      if (t.monomial[i] > 1) mono += '^' + std::to_string(t.monomial[i]);
    }
    if (mono.empty()) {
      os << format_rational(a);
    } else if (a == 1) {
      os << mono;
    } else {
      os << format_rational(a) << '*' << mono;
    }
  }
  return os.str();
}

// ------------------------------------------------------------ parsing

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, RingPtr ring) : s_(text), ring_(std::move(ring)) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("polynomial parse error at offset " + std::to_string(pos_) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc(ring_);
    bool neg = false;
    if (accept('-')) neg = true;
    else accept('+');
    Polynomial t = term();
    acc = neg ? -t : t;
    while (true) {
      if (accept('+')) acc = acc + term();
      else if (accept('-')) acc = acc - term();
      else break;
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (true) {
      if (accept('*')) {
        acc = acc * factor();
      } else if (accept('/')) {
        Polynomial d = factor();
        if (!d.is_constant() || d.is_zero()) fail("division only by nonzero constants");
        acc = acc * (Rational(1) / d.terms().front().coeff);
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial factor() {
    Polynomial base = primary();
    if (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
    }
    return base;
  }

  Polynomial primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Polynomial::constant(ring_, Rational(Integer(std::string(s_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      return Polynomial::variable(ring_, ring_->index_of(s_.substr(start, pos_ - start)));
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  RingPtr ring_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, RingPtr ring) {
  return PolyParser(text, std::move(ring)).parse();
}

}  // namespace toric
