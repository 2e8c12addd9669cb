#include "toric/completion.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "toric/errors.hpp"

namespace toric {

// ------------------------------------------------------------ ObservedSet

ObservedSet::ObservedSet(const ModelMatrix& a, IndexSet e) : e_(std::move(e)), n_(a.cols()) {
  std::sort(e_.begin(), e_.end());
  if (std::adjacent_find(e_.begin(), e_.end()) != e_.end())
    throw PreconditionError("observed set has repeated indices");
  for (std::size_t i : e_)
    if (i >= n_)
      throw PreconditionError("observed index " + std::to_string(i + 1) + " exceeds n = " +
                              std::to_string(n_));
  a_e_ = a.matrix().select_columns(e_);
  rank_a_ = a.rank();
  rank_a_e_ = e_.empty() ? 0 : rank(a_e_);
  rank_ok_ = e_.size() == rank_a_e_ && rank_a_e_ + 1 == rank_a_;
  face_ = minimal_facial_set(a, e_);
  proper_ = face_.indices.size() < n_;
}

std::string ObservedSet::rank_failure() const {
  if (e_.size() != rank_a_e_)
    return "|E| = " + std::to_string(e_.size()) + " but rank A_E = " + std::to_string(rank_a_e_);
  if (rank_a_e_ + 1 != rank_a_)
    return "rank A_E = " + std::to_string(rank_a_e_) + " but rank A - 1 = " +
           std::to_string(rank_a_ - 1);
  return {};
}

bool ObservedSet::contains(std::size_t i) const {
  return std::binary_search(e_.begin(), e_.end(), i);
}

void ObservedSet::require_rank_ok() const {
  if (!rank_ok_) throw PreconditionError("rank condition |E| = rank A_E = rank A - 1 fails: " +
                                         rank_failure());
}

// ---------------------------------------------------------- branch vector

BranchVector branch_vector(const ModelMatrix& a, const ObservedSet& e) {
  e.require_rank_ok();
  const IntMatrix at = a.matrix().transposed();
  for (const IntVector& w : integer_kernel_basis(e.a_e().transposed())) {
    IntVector nu = at * w;
    if (is_zero(nu)) continue;
    Integer g = content(nu);
    const auto first = std::find_if(nu.begin(), nu.end(), [](const Integer& x) { return x != 0; });
    if (*first < 0) g = -g;
    BranchVector b;
    for (auto& x : nu) x /= g;
    b.nu = std::move(nu);
    for (const auto& x : w) b.omega.push_back(Rational(x) / Rational(g));
    b.nonnegative = std::all_of(b.nu.begin(), b.nu.end(), [](const Integer& x) { return x >= 0; });
    return b;
  }
  throw std::logic_error("A^T(ker A_E^T) is zero although the rank condition holds");
}

// ---------------------------------------------------- toric completability

ToricCompletability completable_to_toric(const ModelMatrix& a, const ObservedSet& e,
                                         const RatVector& p_e) {
  if (p_e.size() != e.size()) throw PreconditionError("p_E has wrong length");
  for (const auto& x : p_e)
    if (sgn(x) < 0) throw PreconditionError("p_E must be non-negative");
  ToricCompletability out;
  IndexSet supp_local = support(p_e);
  IndexSet supp;
  for (std::size_t i : supp_local) supp.push_back(e.indices()[i]);
  out.witness = minimal_facial_set(a, supp);

  ModelMatrix sub = a.restricted(e.indices());
  if (!variety_membership(sub, p_e)) {
    out.reason = "p_E is not on the toric variety of A_E";
    return out;
  }
  IndexSet meet;
  for (std::size_t i : out.witness.indices)
    if (e.contains(i)) meet.push_back(i);
  if (meet != supp) {
    out.reason = "the smallest facial set containing supp(p_E) meets E in a larger set";
    return out;
  }
  out.completable = true;
  return out;
}

// ------------------------------------------------------------------- lift

std::vector<double> lift_positive(const ModelMatrix& a, const ObservedSet& e,
                                  const RatVector& p_e) {
  if (p_e.size() != e.size()) throw PreconditionError("p_E has wrong length");
  for (const auto& x : p_e)
    if (sgn(x) <= 0) throw PreconditionError("lift_positive needs p_E > 0");
  const std::size_t k = a.rows();
  Eigen::MatrixXd m(e.size(), k);
  Eigen::VectorXd rhs(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t r = 0; r < k; ++r) m(i, r) = a.matrix()(r, e.indices()[i]).get_d();
    rhs(i) = std::log(p_e[i].get_d());
  }
  const Eigen::VectorXd v = m.completeOrthogonalDecomposition().solve(rhs);
  std::vector<double> q(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (std::size_t r = 0; r < k; ++r) s += a.matrix()(r, j).get_d() * v(r);
    q[j] = std::exp(s);
  }
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double want = p_e[i].get_d();
    if (std::abs(q[e.indices()[i]] - want) > 1e-9 * want)
      throw DomainError("p_E is not on the toric variety of A_E");
  }
  return q;
}

// ---------------------------------------------------------------- section

double ExponentialSection::value(double t) const {
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) s += nu[i] == 0 ? q[i] : q[i] * std::exp(nu[i] * t);
  return s;
}

double ExponentialSection::slope(double t) const {
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i)
    if (nu[i] != 0) s += nu[i] * q[i] * std::exp(nu[i] * t);
  return s;
}

double ExponentialSection::curvature(double t) const {
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i)
    if (nu[i] != 0) s += nu[i] * nu[i] * q[i] * std::exp(nu[i] * t);
  return s;
}

double ExponentialSection::floor_mass() const {
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i)
    if (nu[i] == 0) s += q[i];
  return s;
}

namespace {

// Root of an increasing function on [lo, hi] with f(lo) <= 0 <= f(hi);
// Newton steps kept inside the bracket, bisection otherwise.
template <class F, class DF>
double safeguarded_newton(F f, DF df, double lo, double hi) {
  double t = 0.5 * (lo + hi);
  for (int it = 0; it < 400; ++it) {
    const double ft = f(t);
    if (ft == 0.0) return t;
    if (ft < 0) lo = t;
    else hi = t;
    const double d = df(t);
    double next = d > 0 ? t - ft / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - t);
    t = next;
    if (step <= 1e-16 * std::max(1.0, std::abs(t)) || hi - lo <= 4e-16 * std::max(1.0, std::abs(t)))
      break;
  }
  return t;
}

// Moves from `start` by doubling steps in direction dir until pred holds.
template <class P>
std::optional<double> march(P pred, double start, double dir) {
  double step = 1.0;
  double t = start;
  for (int it = 0; it < 1100; ++it) {
    t = start + dir * step;
    if (pred(t)) return t;
    step *= 2;
    if (!std::isfinite(t)) break;
  }
  return std::nullopt;
}

SectionRoots solve_increasing(const ExponentialSection& s) {
  SectionRoots out;
  out.monotone = true;
  out.minimum = s.floor_mass();
  auto f = [&](double t) { return s.value(t) - 1.0; };
  auto df = [&](double t) { return s.slope(t); };
  double lo, hi;
  if (f(0.0) < 0) {
    lo = 0.0;
    auto h = march([&](double t) { return f(t) >= 0; }, 0.0, 1.0);
    if (!h) return out;
    hi = *h;
  } else {
    hi = 0.0;
    auto l = march([&](double t) { return f(t) < 0; }, 0.0, -1.0);
    if (!l) return out;
    lo = *l;
  }
  out.roots.push_back(safeguarded_newton(f, df, lo, hi));
  return out;
}

}  // namespace

SectionRoots solve_section(const ExponentialSection& s, double tol) {
  if (s.q.size() != s.nu.size()) throw PreconditionError("section vectors differ in length");
  for (double x : s.q)
    if (!(x > 0)) throw PreconditionError("section base point must be positive");
  const bool pos = std::any_of(s.nu.begin(), s.nu.end(), [](double x) { return x > 0; });
  const bool neg = std::any_of(s.nu.begin(), s.nu.end(), [](double x) { return x < 0; });
  if (!pos && !neg) {
    SectionRoots out;
    out.monotone = true;
    out.minimum = s.floor_mass();
    return out;
  }
  if (!neg) return solve_increasing(s);
  if (!pos) {
    ExponentialSection flipped{s.q, s.nu};
    for (auto& x : flipped.nu) x = -x;
    SectionRoots out = solve_increasing(flipped);
    for (auto& t : out.roots) t = -t;
    return out;
  }

  SectionRoots out;
  auto d1 = [&](double t) { return s.slope(t); };
  auto d2 = [&](double t) { return s.curvature(t); };
  double lo, hi;
  if (d1(0.0) < 0) {
    lo = 0.0;
    hi = *march([&](double t) { return d1(t) >= 0; }, 0.0, 1.0);
  } else {
    hi = 0.0;
    lo = *march([&](double t) { return d1(t) < 0; }, 0.0, -1.0);
  }
  const double tstar = safeguarded_newton(d1, d2, lo, hi);
  out.argmin = tstar;
  out.minimum = s.value(tstar);
  if (out.minimum > 1.0 + tol) return out;
  if (std::abs(out.minimum - 1.0) <= tol) {
    out.tangency = true;
    out.roots.push_back(tstar);
    return out;
  }
  auto f = [&](double t) { return s.value(t) - 1.0; };
  auto df = [&](double t) { return s.slope(t); };
  auto nf = [&](double t) { return f(-t); };
  auto ndf = [&](double t) { return -s.slope(-t); };
  const double left_far = *march([&](double t) { return f(t) >= 0; }, tstar, -1.0);
  const double right_far = *march([&](double t) { return f(t) >= 0; }, tstar, 1.0);
  // Left branch is decreasing; mirror it to reuse the increasing solver.
  const double left = -safeguarded_newton(nf, ndf, -tstar, -left_far);
  const double right = safeguarded_newton(f, df, tstar, right_far);
  out.roots = {left, right};
  return out;
}

// ------------------------------------------------------------ enumeration

std::string to_string(Classification c) {
  switch (c) {
    case Classification::kOutside: return "outside";
    case Classification::kInteriorTwo: return "interior-two";
    case Classification::kInteriorOne: return "interior-one";
    case Classification::kBoundaryBranch: return "boundary-branch";
    case Classification::kBoundaryFacet: return "boundary-facet";
  }
  return "?";
}

std::string to_string(Region r) {
  switch (r) {
    case Region::kInterior: return "interior";
    case Region::kBoundary: return "boundary";
    case Region::kOutside: return "outside";
  }
  return "?";
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::kNone: return "none";
    case Provenance::kBranchImage: return "branch-image";
    case Provenance::kModelBoundaryImage: return "model-boundary-image";
  }
  return "?";
}

std::optional<Rational> reconstruct_rational(double x, long max_den, double rel_tol) {
  if (!std::isfinite(x)) return std::nullopt;
  if (x == 0.0) return Rational(0);
  const bool negative = x < 0;
  const double ax = std::abs(x);
  double r = ax;
  long long h_prev = 1, h_prev2 = 0, k_prev = 0, k_prev2 = 1;
  for (int it = 0; it < 64; ++it) {
    const double fl = std::floor(r);
    if (fl > 1e15) break;
    const long long a = static_cast<long long>(fl);
    const long long h = a * h_prev + h_prev2;
    const long long k = a * k_prev + k_prev2;
    if (k > max_den) break;
    if (std::abs(static_cast<double>(h) / static_cast<double>(k) - ax) <= rel_tol * ax) {
      Rational q(static_cast<long>(h), static_cast<long>(k));
      q.canonicalize();
      return negative ? Rational(-q) : q;
    }
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    const double frac = r - fl;
    if (frac <= 0) break;
    r = 1.0 / frac;
  }
  return std::nullopt;
}

namespace {

Rational exact_dot(const IntVector& nu, const RatVector& c) { return dot(nu, c); }

// Exact candidate from a float completion: E coordinates from p_E, the
// others by reconstruction. Verified by positivity, sum and lattice test.
std::optional<RatVector> certify(const ModelMatrix& a, const ObservedSet& e, const RatVector& p_e,
                                 const std::vector<double>& c, const CompletionOptions& opt) {
  RatVector x(c.size());
  for (std::size_t i = 0, k = 0; i < c.size(); ++i) {
    if (k < e.size() && e.indices()[k] == i) {
      x[i] = p_e[k++];
      continue;
    }
    auto r = reconstruct_rational(c[i], opt.max_denominator, 1e-10);
    if (!r || sgn(*r) <= 0) return std::nullopt;
    x[i] = *r;
  }
  Rational sum = 0;
  for (const auto& v : x) sum += v;
  if (sum != 1) return std::nullopt;
  if (!lattice_membership(a, x)) return std::nullopt;
  return x;
}

// prod_e p_e^{c_e} when rational.
std::optional<Rational> exact_power_product(const RatVector& base, const RatVector& expo) {
  Integer d = 1;
  for (const auto& c : expo) d = lcm(d, Integer(c.get_den()));
  if (!d.fits_ulong_p()) return std::nullopt;
  const unsigned long root = d.get_ui();
  Rational r = 1;
  for (std::size_t i = 0; i < base.size(); ++i) {
    const Integer num_exp = expo[i].get_num() * (d / expo[i].get_den());
    if (num_exp == 0) continue;
    if (!num_exp.fits_slong_p()) return std::nullopt;
    const long e = num_exp.get_si();
    Integer nn, dd;
    mpz_pow_ui(nn.get_mpz_t(), base[i].get_num_mpz_t(), static_cast<unsigned long>(std::labs(e)));
    mpz_pow_ui(dd.get_mpz_t(), base[i].get_den_mpz_t(), static_cast<unsigned long>(std::labs(e)));
    Rational f(e > 0 ? nn : dd, e > 0 ? dd : nn);
    f.canonicalize();
    r *= f;
  }
  if (root == 1) return r;
  Integer nr, dr;
  const bool n_exact = mpz_root(nr.get_mpz_t(), r.get_num_mpz_t(), root) != 0;
  const bool d_exact = mpz_root(dr.get_mpz_t(), r.get_den_mpz_t(), root) != 0;
  if (!n_exact || !d_exact) return std::nullopt;
  Rational out(nr, dr);
  out.canonicalize();
  return out;
}

// Exact coordinates of the facet point determined by p_E, or nullopt when
// some coordinate is irrational.
std::optional<RatVector> exact_facet_point(const ModelMatrix& a, const ObservedSet& e,
                                           const RatVector& p_e, const IndexSet& facet) {
  RatVector x(a.cols(), 0);
  for (std::size_t j : facet) {
    if (e.contains(j)) {
      const auto pos = std::lower_bound(e.indices().begin(), e.indices().end(), j) - e.indices().begin();
      x[j] = p_e[static_cast<std::size_t>(pos)];
      continue;
    }
    auto c = solve_rational(e.a_e(), to_rational(a.column(j)));
    if (!c) throw std::logic_error("facet column outside span of A_E");
    auto v = exact_power_product(p_e, *c);
    if (!v) return std::nullopt;
    x[j] = *v;
  }
  return x;
}

Completion make_completion(const std::vector<double>& q, const IntVector& nu, double t) {
  Completion c;
  c.t = t;
  c.point.resize(q.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double ni = nu[i].get_d();
    c.point[i] = ni == 0 ? q[i] : q[i] * std::exp(ni * t);
    sum += c.point[i];
    c.nu_dot += ni * c.point[i];
  }
  c.sum_residual = std::abs(sum - 1.0);
  return c;
}

}  // namespace

CompletionResult enumerate_completions(const ModelMatrix& a, const ObservedSet& e,
                                       const RatVector& p_e, const CompletionOptions& opt) {
  e.require_rank_ok();
  if (p_e.size() != e.size()) throw PreconditionError("p_E has wrong length");
  for (const auto& x : p_e)
    if (sgn(x) <= 0)
      throw PreconditionError("enumeration requires a partial observation with positive coordinates");

  CompletionResult res;
  res.branch = branch_vector(a, e);
  try {
    res.base = lift_positive(a, e, p_e);
  } catch (const DomainError& err) {
    res.classification = Classification::kOutside;
    res.reason = err.what();
    return res;
  }
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double want = p_e[i].get_d();
    res.lift_residual =
        std::max(res.lift_residual, std::abs(res.base[e.indices()[i]] - want) / want);
  }

  ExponentialSection sec{res.base, {}};
  for (const auto& x : res.branch.nu) sec.nu.push_back(x.get_d());
  res.section = solve_section(sec, opt.section_tol);

  auto add_root = [&](double t) {
    Completion c = make_completion(res.base, res.branch.nu, t);
    if (opt.certify) {
      c.exact = certify(a, e, p_e, c.point, opt);
      if (c.exact) c.nu_dot_exact = exact_dot(res.branch.nu, *c.exact);
    }
    res.completions.push_back(std::move(c));
  };

  if (!res.branch.nonnegative) {
    if (res.section.roots.empty()) {
      res.classification = Classification::kOutside;
      res.reason = "minimum of the fiber section exceeds 1";
      return res;
    }
    res.classification =
        res.section.tangency ? Classification::kBoundaryBranch : Classification::kInteriorTwo;
    for (double t : res.section.roots) add_root(t);
    if (res.section.tangency) {
      for (auto& c : res.completions)
        if (c.exact && *c.nu_dot_exact != 0) c.exact.reset();
    }
    return res;
  }

  // E lies in the proper facial set F = {i : nu_i = 0}; the fiber section is
  // increasing with limit equal to the mass of q on F.
  res.facet_case = true;
  IndexSet facet;
  for (std::size_t i = 0; i < res.branch.nu.size(); ++i)
    if (res.branch.nu[i] == 0) facet.push_back(i);
  res.facet_mass = sec.floor_mass();
  std::optional<RatVector> facet_point = exact_facet_point(a, e, p_e, facet);
  int cmp;
  if (facet_point) {
    Rational m = 0;
    for (std::size_t j : facet) m += (*facet_point)[j];
    res.facet_mass_exact = m;
    cmp = m < 1 ? -1 : (m == 1 ? 0 : 1);
  } else {
    res.facet_mass_within_tolerance = std::abs(res.facet_mass - 1.0) <= opt.coordinate_tol;
    cmp = res.facet_mass_within_tolerance ? 0 : (res.facet_mass < 1.0 ? -1 : 1);
  }
  if (cmp > 0) {
    res.classification = Classification::kOutside;
    res.reason = "mass of the lift on the facial set exceeds 1";
    return res;
  }
  if (cmp == 0) {
    res.classification = Classification::kBoundaryFacet;
    Completion c;
    c.t = -std::numeric_limits<double>::infinity();
    c.point.assign(a.cols(), 0.0);
    double sum = 0.0;
    for (std::size_t j : facet) {
      c.point[j] = res.base[j];
      sum += c.point[j];
    }
    c.sum_residual = std::abs(sum - 1.0);
    if (facet_point && variety_membership(a, *facet_point)) {
      c.exact = facet_point;
      c.nu_dot_exact = Rational(0);
    }
    res.completions.push_back(std::move(c));
    res.section.roots.clear();
    return res;
  }
  res.classification = Classification::kInteriorOne;
  if (res.section.roots.empty()) {
    res.reason = "facet mass below 1 but the root is beyond double range";
    return res;
  }
  add_root(res.section.roots.front());
  return res;
}

RegionLabel classify(const CompletionResult& r) {
  switch (r.classification) {
    case Classification::kInteriorTwo:
    case Classification::kInteriorOne: return {Region::kInterior, Provenance::kNone};
    case Classification::kBoundaryBranch: return {Region::kBoundary, Provenance::kBranchImage};
    case Classification::kBoundaryFacet:
      return {Region::kBoundary, Provenance::kModelBoundaryImage};
    case Classification::kOutside: break;
  }
  return {Region::kOutside, Provenance::kNone};
}

RegionLabel classify_observation(const ModelMatrix& a, const ObservedSet& e, const RatVector& p_e,
                                 const CompletionOptions& opt) {
  return classify(enumerate_completions(a, e, p_e, opt));
}

}  // namespace toric
