#include "toric/geometry.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "toric/errors.hpp"

namespace toric {

void RationalLP::add(RatVector row, Relation rel, Rational b) {
  if (row.size() != nvars) throw PreconditionError("LP row has wrong length");
  rows.push_back(std::move(row));
  relations.push_back(rel);
  rhs.push_back(std::move(b));
}

namespace {

class Tableau {
 public:
  Tableau(std::vector<RatVector> rows, std::vector<std::size_t> basis, std::size_t ncols)
      : t_(std::move(rows)), basis_(std::move(basis)), n_(ncols) {}

  std::size_t rows() const { return t_.size(); }
  const Rational& rhs(std::size_t r) const { return t_[r][n_]; }
  std::size_t basic(std::size_t r) const { return basis_[r]; }

  void set_cost(const RatVector& c) {
    z_ = c;
    z_.resize(n_ + 1, 0);
    for (std::size_t r = 0; r < rows(); ++r) {
      const Rational cb = z_[basis_[r]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= n_; ++j) z_[j] -= cb * t_[r][j];
    }
  }
  Rational objective() const { return -z_[n_]; }

  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = 1 / t_[r][c];
    for (auto& x : t_[r]) x *= inv;
    for (std::size_t i = 0; i < rows(); ++i) {
      if (i == r || sgn(t_[i][c]) == 0) continue;
      const Rational f = t_[i][c];
      for (std::size_t j = 0; j <= n_; ++j) t_[i][j] -= f * t_[r][j];
    }
    if (!z_.empty() && sgn(z_[c]) != 0) {
      const Rational f = z_[c];
      for (std::size_t j = 0; j <= n_; ++j) z_[j] -= f * t_[r][j];
    }
    basis_[r] = c;
  }

  // Bland's rule; returns false when unbounded.
  bool optimize(const std::vector<bool>& allowed) {
    for (;;) {
      std::size_t enter = n_;
      for (std::size_t j = 0; j < n_; ++j)
        if (allowed[j] && sgn(z_[j]) < 0) {
          enter = j;
          break;
        }
      if (enter == n_) return true;
      std::size_t leave = rows();
      Rational best;
      for (std::size_t r = 0; r < rows(); ++r) {
        if (sgn(t_[r][enter]) <= 0) continue;
        Rational ratio = t_[r][n_] / t_[r][enter];
        if (leave == rows() || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
          leave = r;
          best = std::move(ratio);
        }
      }
      if (leave == rows()) return false;
      pivot(leave, enter);
    }
  }

  // Remove artificial columns (index >= first) from the basis; drop rows that
  // are redundant.
  void expel(std::size_t first) {
    for (std::size_t r = 0; r < rows();) {
      if (basis_[r] < first) {
        ++r;
        continue;
      }
      std::size_t c = 0;
      while (c < first && sgn(t_[r][c]) == 0) ++c;
      if (c < first) {
        pivot(r, c);
        ++r;
      } else {
        t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
      }
    }
  }

  RatVector solution(std::size_t count) const {
    RatVector x(count, 0);
    for (std::size_t r = 0; r < rows(); ++r)
      if (basis_[r] < count) x[basis_[r]] = t_[r][n_];
    return x;
  }

 private:
  std::vector<RatVector> t_;
  std::vector<std::size_t> basis_;
  std::size_t n_;
  RatVector z_;
};

}  // namespace

LPSolution solve_lp(const RationalLP& lp) {
  const std::size_t m = lp.rows.size();
  std::vector<bool> is_free = lp.free_vars;
  is_free.resize(lp.nvars, false);
  if (!lp.objective.empty() && lp.objective.size() != lp.nvars)
    throw PreconditionError("LP objective has wrong length");

  // Column layout: original (split when free), slacks, artificials.
  std::vector<std::size_t> pos_col(lp.nvars), neg_col(lp.nvars, SIZE_MAX);
  std::size_t ncols = 0;
  for (std::size_t j = 0; j < lp.nvars; ++j) {
    pos_col[j] = ncols++;
    if (is_free[j]) neg_col[j] = ncols++;
  }
  const std::size_t structural = ncols;
  std::vector<std::size_t> slack(m, SIZE_MAX);
  for (std::size_t i = 0; i < m; ++i)
    if (lp.relations[i] != Relation::kEq) slack[i] = ncols++;
  const std::size_t first_art = ncols;
  ncols += m;

  std::vector<RatVector> rows(m, RatVector(ncols + 1, 0));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    RatVector& row = rows[i];
    for (std::size_t j = 0; j < lp.nvars; ++j) {
      row[pos_col[j]] = lp.rows[i][j];
      if (is_free[j]) row[neg_col[j]] = -lp.rows[i][j];
    }
    if (lp.relations[i] == Relation::kGe) row[slack[i]] = -1;
    if (lp.relations[i] == Relation::kLe) row[slack[i]] = 1;
    row[ncols] = lp.rhs[i];
    if (sgn(row[ncols]) < 0)
      for (auto& x : row) x = -x;
    row[first_art + i] = 1;
    basis[i] = first_art + i;
  }

  Tableau tab(std::move(rows), std::move(basis), ncols);
  RatVector c1(ncols, 0);
  for (std::size_t i = 0; i < m; ++i) c1[first_art + i] = 1;
  tab.set_cost(c1);
  tab.optimize(std::vector<bool>(ncols, true));
  LPSolution out;
  if (sgn(tab.objective()) != 0) return out;
  tab.expel(first_art);

  RatVector c2(ncols, 0);
  for (std::size_t j = 0; j < lp.objective.size(); ++j) {
    c2[pos_col[j]] = lp.objective[j];
    if (is_free[j]) c2[neg_col[j]] = -lp.objective[j];
  }
  tab.set_cost(c2);
  std::vector<bool> allowed(ncols, false);
  std::fill(allowed.begin(), allowed.begin() + static_cast<std::ptrdiff_t>(first_art), true);
  if (!tab.optimize(allowed)) {
    out.status = LPStatus::kUnbounded;
    return out;
  }
  const RatVector raw = tab.solution(structural);
  out.x.assign(lp.nvars, 0);
  for (std::size_t j = 0; j < lp.nvars; ++j) {
    out.x[j] = raw[pos_col[j]];
    if (is_free[j]) out.x[j] -= raw[neg_col[j]];
  }
  out.value = 0;
  for (std::size_t j = 0; j < lp.objective.size(); ++j) out.value += lp.objective[j] * out.x[j];
  out.status = LPStatus::kOptimal;
  return out;
}

// ------------------------------------------------------------ facial sets

bool FacialSet::contains(std::size_t i) const {
  return std::binary_search(indices.begin(), indices.end(), i);
}

std::vector<int> characteristic_vector(const IndexSet& f, std::size_t n) {
  std::vector<int> chi(n, 0);
  for (std::size_t i : f) chi.at(i) = 1;
  return chi;
}

namespace {

RatVector column_q(const ModelMatrix& a, std::size_t j) { return to_rational(a.column(j)); }

// LP over v in Q^k (free).
RationalLP normal_lp(const ModelMatrix& a) {
  RationalLP lp;
  lp.nvars = a.rows();
  lp.free_vars.assign(a.rows(), true);
  return lp;
}

}  // namespace

std::optional<RatVector> is_facial_set(const ModelMatrix& a, const IndexSet& f) {
  std::vector<bool> in(a.cols(), false);
  for (std::size_t i : f) in.at(i) = true;
  RationalLP lp = normal_lp(a);
  for (std::size_t j = 0; j < a.cols(); ++j)
    lp.add(column_q(a, j), in[j] ? Relation::kEq : Relation::kGe, in[j] ? 0 : 1);
  LPSolution s = solve_lp(lp);
  if (s.status != LPStatus::kOptimal) return std::nullopt;
  return s.x;
}

FacialSet minimal_facial_set(const ModelMatrix& a, const IndexSet& s) {
  std::vector<bool> in(a.cols(), false);
  for (std::size_t i : s) in.at(i) = true;
  RatVector normal(a.rows(), 0);
  IndexSet f;
  for (std::size_t i = 0; i < a.cols(); ++i) {
    if (in[i]) {
      f.push_back(i);
      continue;
    }
    RationalLP lp = normal_lp(a);
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (in[j]) lp.add(column_q(a, j), Relation::kEq, 0);
      else if (j == i) lp.add(column_q(a, j), Relation::kGe, 1);
      else lp.add(column_q(a, j), Relation::kGe, 0);
    }
    LPSolution sol = solve_lp(lp);
    if (sol.status != LPStatus::kOptimal) {
      f.push_back(i);
      continue;
    }
    for (std::size_t r = 0; r < a.rows(); ++r) normal[r] += sol.x[r];
  }
  return FacialSet{f, normal, characteristic_vector(f, a.cols())};
}

std::vector<FacialSet> all_facial_sets(const ModelMatrix& a, std::size_t bound) {
  if (a.cols() > bound)
    throw CapacityError("facial-set enumeration limited to n <= " + std::to_string(bound) +
                        " columns (got " + std::to_string(a.cols()) + ")");
  std::set<IndexSet> seen;
  std::vector<FacialSet> out;
  std::deque<FacialSet> queue;
  FacialSet root = minimal_facial_set(a, {});
  seen.insert(root.indices);
  queue.push_back(root);
  while (!queue.empty()) {
    FacialSet f = std::move(queue.front());
    queue.pop_front();
    for (std::size_t i = 0; i < a.cols(); ++i) {
      if (f.contains(i)) continue;
      IndexSet s = f.indices;
      s.insert(std::upper_bound(s.begin(), s.end(), i), i);
      FacialSet g = minimal_facial_set(a, s);
      if (seen.insert(g.indices).second) queue.push_back(g);
    }
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end(), [](const FacialSet& x, const FacialSet& y) {
    if (x.indices.size() != y.indices.size()) return x.indices.size() < y.indices.size();
    return x.indices < y.indices;
  });
  return out;
}

// ---------------------------------------------------------------- moments

RatVector moment_map(const ModelMatrix& a, const RatVector& p) {
  if (p.size() != a.cols()) throw PreconditionError("point has wrong length");
  return a.matrix() * p;
}

std::vector<double> moment_map(const ModelMatrix& a, const std::vector<double>& p) {
  if (p.size() != a.cols()) throw PreconditionError("point has wrong length");
  std::vector<double> b(a.rows(), 0.0);
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t j = 0; j < a.cols(); ++j) b[r] += a.matrix()(r, j).get_d() * p[j];
  return b;
}

namespace {

// lambda >= 0 (n vars) plus scale s >= 0: A lambda = s q, sum lambda = s.
RationalLP convex_lp(const ModelMatrix& a, const RatVector& q) {
  if (q.size() != a.rows()) throw PreconditionError("moment vector has wrong length");
  RationalLP lp;
  lp.nvars = a.cols() + 1;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    RatVector row(lp.nvars, 0);
    for (std::size_t j = 0; j < a.cols(); ++j) row[j] = a.matrix()(r, j);
    row[a.cols()] = -q[r];
    lp.add(std::move(row), Relation::kEq, 0);
  }
  RatVector sum(lp.nvars, 1);
  sum[a.cols()] = -1;
  lp.add(std::move(sum), Relation::kEq, 0);
  return lp;
}

}  // namespace

bool in_polytope(const ModelMatrix& a, const RatVector& q) {
  RationalLP lp = convex_lp(a, q);
  RatVector s(lp.nvars, 0);
  s[a.cols()] = 1;
  lp.add(std::move(s), Relation::kEq, 1);
  return solve_lp(lp).status == LPStatus::kOptimal;
}

std::optional<IndexSet> face_of_point(const ModelMatrix& a, const RatVector& q) {
  if (!in_polytope(a, q)) return std::nullopt;
  IndexSet f;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    RationalLP lp = convex_lp(a, q);
    RatVector e(lp.nvars, 0);
    e[j] = 1;
    lp.add(std::move(e), Relation::kGe, 1);
    if (solve_lp(lp).status == LPStatus::kOptimal) f.push_back(j);
  }
  return f;
}

bool in_span_cap_polytope(const ModelMatrix& a, const IndexSet& e, const RatVector& q) {
  if (!solve_rational(a.matrix().select_columns(e), q)) return false;
  return in_polytope(a, q);
}

}  // namespace toric
