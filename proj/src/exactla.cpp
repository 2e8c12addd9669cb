#include "toric/exactla.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

#include "toric/errors.hpp"

namespace toric {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw PreconditionError("ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  std::vector<IntVector> big;
  big.reserve(rows.size());
  for (const auto& r : rows) big.emplace_back(r.begin(), r.end());
  return from_rows(big);
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw PreconditionError("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::select_columns(const std::vector<std::size_t>& cols) const {
  IntMatrix s(rows_, cols.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t j = 0; j < cols.size(); ++j) s(r, j) = (*this)(r, cols.at(j));
  return s;
}

IntVector IntMatrix::operator*(const IntVector& x) const {
  if (x.size() != cols_) throw PreconditionError("matrix-vector size mismatch");
  IntVector y(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) y[r] += (*this)(r, c) * x[c];
  return y;
}

RatVector IntMatrix::operator*(const RatVector& x) const {
  if (x.size() != cols_) throw PreconditionError("matrix-vector size mismatch");
  RatVector y(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (sgn((*this)(r, c)) != 0) y[r] += Rational((*this)(r, c)) * x[c];
  return y;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
  if (cols_ != other.rows_) throw PreconditionError("matrix product size mismatch");
  IntMatrix p(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(i, k);
      if (sgn(a) == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) p(i, j) += a * other(k, j);
    }
  return p;
}

std::string to_string(const IntMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) os << ", ";
    os << '[' << format_vector(m.row(r), ", ") << ']';
  }
  os << ']';
  return os.str();
}

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}

// row[dst] -= factor * row[src]
void sub_row(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& factor) {
  if (sgn(factor) == 0) return;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (sgn(m(src, c)) != 0) m(dst, c) -= factor * m(src, c);
}

void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = -m(r, c);
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

HermiteResult hermite_normal_form(const IntMatrix& m) {
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < h.cols() && pivot_row < h.rows(); ++c) {
    // Euclid on column c below pivot_row until a single nonzero remains.
    while (true) {
      std::size_t best = h.rows();
      for (std::size_t r = pivot_row; r < h.rows(); ++r) {
        if (sgn(h(r, c)) == 0) continue;
        if (best == h.rows() || abs(h(r, c)) < abs(h(best, c))) best = r;
      }
      if (best == h.rows()) break;
      swap_rows(h, pivot_row, best);
      swap_rows(u, pivot_row, best);
      bool done = true;
      for (std::size_t r = pivot_row + 1; r < h.rows(); ++r) {
        if (sgn(h(r, c)) == 0) continue;
        Integer q = floor_div(h(r, c), h(pivot_row, c));
        sub_row(h, r, pivot_row, q);
        sub_row(u, r, pivot_row, q);
        if (sgn(h(r, c)) != 0) done = false;
      }
      if (done) break;
    }
    if (sgn(h(pivot_row, c)) == 0) continue;
    if (sgn(h(pivot_row, c)) < 0) {
      negate_row(h, pivot_row);
      negate_row(u, pivot_row);
    }
    for (std::size_t r = 0; r < pivot_row; ++r) {
      Integer q = floor_div(h(r, c), h(pivot_row, c));
      sub_row(h, r, pivot_row, q);
      sub_row(u, r, pivot_row, q);
    }
    ++pivot_row;
  }
  return {std::move(h), std::move(u)};
}

LatticeBasis integer_kernel_basis(const IntMatrix& m) {
  // U * M^T = H; rows of U facing zero rows of H span the left kernel of
  // M^T, i.e. the kernel of M.
  const HermiteResult hr = hermite_normal_form(m.transposed());
  std::vector<IntVector> raw;
  for (std::size_t r = 0; r < hr.H.rows(); ++r) {
    if (is_zero(hr.H.row(r))) raw.push_back(hr.U.row(r));
  }
  if (raw.empty()) return {};
  const HermiteResult canon = hermite_normal_form(IntMatrix::from_rows(raw));
  LatticeBasis basis;
  for (std::size_t r = 0; r < canon.H.rows(); ++r) {
    IntVector v = canon.H.row(r);
    if (!is_zero(v)) basis.push_back(std::move(v));
  }
  return basis;
}

namespace {

struct Echelon {
  std::vector<RatVector> rows;  // reduced row echelon form of [M | b]
  std::vector<std::size_t> pivots;
};

Echelon rref(std::vector<RatVector> rows, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && sgn(rows[p][c]) == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    const Rational inv = 1 / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || sgn(rows[i][c]) == 0) continue;
      const Rational f = rows[i][c];
      for (std::size_t k = 0; k < rows[i].size(); ++k)
        if (sgn(rows[r][k]) != 0) rows[i][k] -= f * rows[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(rows), std::move(pivots)};
}

}  // namespace

std::size_t rank(const IntMatrix& m) {
  std::vector<RatVector> rows(m.rows(), RatVector(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) rows[r][c] = m(r, c);
  return rref(std::move(rows), m.cols()).pivots.size();
}

std::optional<RatVector> solve_rational(const IntMatrix& m, const RatVector& b) {
  if (b.size() != m.rows()) throw PreconditionError("solve_rational: b has wrong length");
  std::vector<RatVector> rows(m.rows(), RatVector(m.cols() + 1));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) rows[r][c] = m(r, c);
    rows[r][m.cols()] = b[r];
  }
  Echelon e = rref(std::move(rows), m.cols());
  for (std::size_t r = e.pivots.size(); r < e.rows.size(); ++r)
    if (sgn(e.rows[r][m.cols()]) != 0) return std::nullopt;
  RatVector x(m.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.rows[i][m.cols()];
  return x;
}

Integer content(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return sgn(x) == 0; });
}

bool is_zero(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

RatVector to_rational(const IntVector& v) { return RatVector(v.begin(), v.end()); }

Rational dot(const IntVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw PreconditionError("dot: size mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0) s += Rational(a[i]) * b[i];
  return s;
}

Integer dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw PreconditionError("dot: size mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::string format_rational(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw ParseError("empty rational");
  auto is_int = [](std::string_view t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  auto parse_int = [](std::string t) {
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    return Integer(t);
  };
  if (auto slash = s.find('/'); slash != std::string::npos) {
    const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+')
      throw ParseError("malformed rational '" + s + "'");
    Integer d = parse_int(den);
    if (sgn(d) == 0) throw ParseError("zero denominator in '" + s + "'");
    Rational q(parse_int(num), d);
    q.canonicalize();
    return q;
  }
  if (auto dot_pos = s.find('.'); dot_pos != std::string::npos) {
    std::string whole = s.substr(0, dot_pos), frac = s.substr(dot_pos + 1);
    bool neg = !whole.empty() && whole[0] == '-';
    if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole.erase(0, 1);
    if (whole.empty()) whole = "0";
    if (frac.empty() || !is_int(whole) || !is_int(frac) || frac[0] == '-' || frac[0] == '+')
      throw ParseError("malformed decimal '" + s + "'");
    Integer den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    Rational q(Integer(whole) * den + Integer(frac), den);
    q.canonicalize();
    return neg ? Rational(-q) : q;
  }
  if (!is_int(s)) throw ParseError("malformed rational '" + s + "'");
  return Rational(parse_int(s));
}

std::string format_vector(const RatVector& v, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += format_rational(v[i]);
  }
  return out;
}

std::string format_vector(const IntVector& v, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i].get_str();
  }
  return out;
}

}  // namespace toric
