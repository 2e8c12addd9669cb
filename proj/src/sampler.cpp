#include "toric/sampler.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <iterator>
#include <map>
#include <mutex>
#include <string>

#include "toric/errors.hpp"
#include "toric/geometry.hpp"

namespace toric {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t CounterRng::bits(std::uint64_t index) const {
  return splitmix(seed_ ^ splitmix(stream_ ^ splitmix(index)));
}

double CounterRng::uniform(std::uint64_t index) const {
  return (static_cast<double>(bits(index) >> 11) + 0.5) * 0x1.0p-53;
}

CounterRng CounterRng::substream(std::uint64_t s) const {
  return CounterRng(seed_, splitmix(stream_ + 0x632be59bd9b4e019ULL * (s + 1)));
}

// --------------------------------------------------------------- ips_fit

namespace {

double sup_residual(const Eigen::MatrixXd& a, const Eigen::VectorXd& p, const Eigen::VectorXd& b) {
  return (a * p - b).cwiseAbs().maxCoeff();
}

IpsResult fit_on_face(const ModelMatrix& model, const IndexSet& face, const std::vector<double>& b,
                      const SampleConfig& cfg) {
  const std::size_t k = model.rows();
  const std::size_t m = face.size();
  IpsResult out;
  out.face = face;
  out.p.assign(model.cols(), 0.0);
  Eigen::MatrixXd a(k, m);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t j = 0; j < m; ++j) a(r, j) = model.matrix()(r, face[j]).get_d();
  Eigen::VectorXd bv(k);
  for (std::size_t r = 0; r < k; ++r) bv(r) = b[r];

  // Generalized iterative scaling on the augmented system whose columns all
  // sum to N; the extra row absorbs unequal column sums.
  Eigen::VectorXd cs = a.colwise().sum().transpose();
  const double big_n = cs.maxCoeff();
  double total = 0.0;
  for (std::size_t r = 0; r < k; ++r) total += model.unit_witness()[r].get_d() * b[r];
  Eigen::MatrixXd aug(k + 1, m);
  aug.topRows(k) = a;
  aug.row(k) = (Eigen::VectorXd::Constant(m, big_n) - cs).transpose();
  Eigen::VectorXd baug(k + 1);
  baug.head(k) = bv;
  baug(k) = std::max(0.0, big_n * total - bv.sum());

  Eigen::VectorXd p = Eigen::VectorXd::Constant(m, total / static_cast<double>(m));
  std::size_t it = 0;
  const std::size_t gis_cap = std::min<std::size_t>(cfg.max_iterations, 5000);
  for (; it < gis_cap; ++it) {
    if (sup_residual(a, p, bv) <= 1e-4) break;
    const Eigen::VectorXd ap = aug * p;
    Eigen::VectorXd logratio = Eigen::VectorXd::Zero(k + 1);
    for (std::size_t r = 0; r <= k; ++r)
      if (ap(r) > 0 && baug(r) > 0) logratio(r) = std::log(baug(r) / ap(r));
    for (std::size_t j = 0; j < m; ++j) p(j) *= std::exp(aug.col(j).dot(logratio) / big_n);
  }

  // Newton polish on the convex dual F(v) = sum_j exp(a_j^T v) - b^T v.
  Eigen::VectorXd logp = p.array().log().matrix();
  Eigen::VectorXd v = a.transpose().completeOrthogonalDecomposition().solve(logp);
  auto primal = [&](const Eigen::VectorXd& x) {
    return (a.transpose() * x).array().exp().matrix().eval();
  };
  auto objective = [&](const Eigen::VectorXd& x) { return primal(x).sum() - bv.dot(x); };
  p = primal(v);
  double res = sup_residual(a, p, bv);
  for (std::size_t nt = 0; nt < 200 && res > cfg.tolerance && it < cfg.max_iterations; ++nt, ++it) {
    const Eigen::VectorXd grad = a * p - bv;
    const Eigen::MatrixXd hess = a * p.asDiagonal() * a.transpose();
    const Eigen::VectorXd step = hess.completeOrthogonalDecomposition().solve(-grad);
    double alpha = 1.0;
    const double f0 = objective(v);
    const double slope = grad.dot(step);
    Eigen::VectorXd next = v + step;
    // Near the optimum the decrease in F drowns in rounding; a smaller
    // gradient is then the better test.
    auto accept = [&](const Eigen::VectorXd& x) {
      return objective(x) <= f0 + 1e-4 * alpha * slope || sup_residual(a, primal(x), bv) < 0.5 * res;
    };
    while (alpha > 1e-12 && !accept(next)) {
      alpha *= 0.5;
      next = v + alpha * step;
    }
    v = next;
    p = primal(v);
    const double r2 = sup_residual(a, p, bv);
    if (alpha <= 1e-12 && r2 >= res) break;
    res = r2;
  }
  out.iterations = it;
  out.residual = res;
  if (res > cfg.tolerance) throw ConvergenceError("moment-map inversion did not converge", res);
  for (std::size_t j = 0; j < m; ++j) out.p[face[j]] = p(j);
  return out;
}

}  // namespace

namespace {

constexpr double kFaceTolerance = 1e-9;

IndexSet all_columns(const ModelMatrix& a) {
  IndexSet all(a.cols());
  for (std::size_t j = 0; j < all.size(); ++j) all[j] = j;
  return all;
}

// Maximal proper facial sets, cached per matrix.
const std::vector<FacialSet>& facets_of(const ModelMatrix& a) {
  static std::mutex mutex;
  static std::map<std::string, std::vector<FacialSet>> cache;
  const std::string key = to_string(a.matrix());
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<FacialSet> proper;
  for (auto& f : all_facial_sets(a))
    if (f.indices.size() < a.cols()) proper.push_back(std::move(f));
  std::vector<FacialSet> out;
  for (std::size_t i = 0; i < proper.size(); ++i) {
    bool maximal = true;
    for (std::size_t k = 0; k < proper.size() && maximal; ++k)
      if (k != i && proper[k].indices.size() > proper[i].indices.size() &&
          std::includes(proper[k].indices.begin(), proper[k].indices.end(),
                        proper[i].indices.begin(), proper[i].indices.end()))
        maximal = false;
    if (maximal) out.push_back(proper[i]);
  }
  return cache.emplace(key, std::move(out)).first->second;
}

// b within rounding of the linear span of the columns.
bool near_polytope(const ModelMatrix& a, const std::vector<double>& b) {
  Eigen::MatrixXd m(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t j = 0; j < a.cols(); ++j) m(r, j) = a.matrix()(r, j).get_d();
  Eigen::VectorXd bv = Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size()));
  const Eigen::VectorXd x = m.completeOrthogonalDecomposition().solve(bv);
  return (m * x - bv).lpNorm<Eigen::Infinity>() <= 1e-9 * std::max(1.0, bv.lpNorm<Eigen::Infinity>());
}

}  // namespace

IpsResult ips_fit(const ModelMatrix& a, const RatVector& b, const SampleConfig& cfg) {
  if (b.size() != a.rows()) throw PreconditionError("moment vector has wrong length");
  auto face = face_of_point(a, b);
  if (!face) throw DomainError("moment vector lies outside the polytope P_A");
  std::vector<double> bd;
  for (const auto& x : b) bd.push_back(x.get_d());
  return fit_on_face(a, *face, bd, cfg);
}

IpsResult ips_fit(const ModelMatrix& a, const std::vector<double>& b, const SampleConfig& cfg) {
  if (b.size() != a.rows()) throw PreconditionError("moment vector has wrong length");
  RatVector bq;
  for (double x : b) {
    if (!std::isfinite(x)) throw DomainError("moment vector is not finite");
    bq.emplace_back(x);
  }
  if (a.cols() > kDefaultFacialBound) {
    auto face = face_of_point(a, bq);
    if (!face) throw DomainError("moment vector lies outside the polytope P_A");
    return fit_on_face(a, *face, b, cfg);
  }
  // Floating input carries rounding noise, so decide facet membership with a
  // tolerance instead of the exact LP.
  if (!in_span_cap_polytope(a, all_columns(a), bq) && !near_polytope(a, b))
    throw DomainError("moment vector lies outside the polytope P_A");
  IndexSet face = all_columns(a);
  const double scale = std::max(1.0, *std::max_element(b.begin(), b.end(), [](double x, double y) {
    return std::abs(x) < std::abs(y);
  }));
  for (const auto& f : facets_of(a)) {
    double d = 0.0, norm = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      d += f.inner_normal[r].get_d() * b[r];
      norm += std::abs(f.inner_normal[r].get_d());
    }
    if (d < -kFaceTolerance * norm * scale) throw DomainError("moment vector lies outside the polytope P_A");
    if (d <= kFaceTolerance * norm * scale) {
      IndexSet next;
      std::set_intersection(face.begin(), face.end(), f.indices.begin(), f.indices.end(),
                            std::back_inserter(next));
      face = std::move(next);
    }
  }
  if (face.empty()) throw DomainError("moment vector lies outside the polytope P_A");
  return fit_on_face(a, face, b, cfg);
}

// --------------------------------------------------------------- samplers

namespace {

std::vector<double> theta_point(const ModelMatrix& a, const CounterRng& rng, double box) {
  std::vector<double> theta(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) theta[r] = std::exp(rng.uniform(r, -box, box));
  return theta;
}

void normalize(std::vector<double>& p) {
  double s = 0.0;
  for (double x : p) s += x;
  for (double& x : p) x /= s;
}

}  // namespace

std::vector<std::vector<double>> sample_model(const ModelMatrix& a, const SampleConfig& cfg) {
  const CounterRng base(cfg.seed, 1);
  std::vector<std::vector<double>> out;
  out.reserve(cfg.count);
  for (std::size_t s = 0; s < cfg.count; ++s) {
    std::vector<double> p = monomial_map(a, theta_point(a, base.substream(s), cfg.log_box));
    normalize(p);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<std::vector<double>> sample_face(const ModelMatrix& a, const IndexSet& face,
                                             const SampleConfig& cfg) {
  if (face.empty()) throw PreconditionError("cannot normalize a point with empty support");
  const CounterRng base(cfg.seed, 2);
  std::vector<double> chi(a.cols(), 0.0);
  for (std::size_t i : face) chi.at(i) = 1.0;
  std::vector<std::vector<double>> out;
  for (std::size_t s = 0; s < cfg.count; ++s) {
    std::vector<double> p = monomial_map(a, theta_point(a, base.substream(s), cfg.log_box));
    for (std::size_t i = 0; i < p.size(); ++i) p[i] *= chi[i];
    normalize(p);
    out.push_back(std::move(p));
  }
  return out;
}

BranchSamples sample_branch_locus(const ModelMatrix& a, const ObservedSet& e,
                                  const SampleConfig& cfg) {
  e.require_rank_ok();
  BranchSamples out;
  const BranchVector bv = branch_vector(a, e);
  if (bv.nonnegative) {
    out.reason = "E in proper facial set";
    return out;
  }
  const CounterRng base(cfg.seed, 3);
  for (std::size_t s = 0; s < cfg.count; ++s) {
    const CounterRng rng = base.substream(s);
    // Positive weights with nu^T lambda = 0; then b = A lambda lies in
    // im A_E and in the interior of P_A.
    std::vector<double> lambda(a.cols());
    double pos = 0.0, neg = 0.0;
    for (std::size_t i = 0; i < a.cols(); ++i) {
      lambda[i] = std::exp(rng.uniform(i, -cfg.log_box, cfg.log_box));
      const double ni = bv.nu[i].get_d();
      if (ni > 0) pos += ni * lambda[i];
      if (ni < 0) neg -= ni * lambda[i];
    }
    for (std::size_t i = 0; i < a.cols(); ++i)
      if (bv.nu[i] > 0) lambda[i] *= neg / pos;
    normalize(lambda);
    auto p = ips_fit(a, moment_map(a, lambda), cfg).p;
    normalize(p);
    out.points.push_back(std::move(p));
  }
  return out;
}

// ---------------------------------------------------------------- oracle

namespace {

// Basic solution of M x = y (free variables zero), partial pivoting.
std::vector<double> basic_solution(std::vector<std::vector<double>> m, std::vector<double> y) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t best = r;
    for (std::size_t i = r + 1; i < rows; ++i)
      if (std::abs(m[i][c]) > std::abs(m[best][c])) best = i;
    if (std::abs(m[best][c]) < 1e-12) continue;
    std::swap(m[best], m[r]);
    std::swap(y[best], y[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const double f = m[i][c] / m[r][c];
      if (f == 0) continue;
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
      y[i] -= f * y[r];
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<double> x(cols, 0.0);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = y[i] / m[i][pivots[i]];
  return x;
}

double golden_min(const std::function<double(double)>& h, double lo, double hi) {
  const double g = (std::sqrt(5.0) - 1) / 2;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = h(x1), f2 = h(x2);
  for (int it = 0; it < 300 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = h(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = h(x2);
    }
  }
  return std::min(f1, f2);
}

}  // namespace

OracleCount brute_force_completions(const ModelMatrix& a, const ObservedSet& e,
                                    const std::vector<double>& p_e, std::size_t grid) {
  if (p_e.size() != e.size()) throw PreconditionError("p_E has wrong length");
  for (double x : p_e)
    if (!(x > 0)) throw PreconditionError("oracle needs positive p_E");
  const BranchVector bv = branch_vector(a, e);
  std::vector<std::vector<double>> m(e.size(), std::vector<double>(a.rows()));
  std::vector<double> y(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t r = 0; r < a.rows(); ++r) m[i][r] = a.matrix()(r, e.indices()[i]).get_d();
    y[i] = std::log(p_e[i]);
  }
  const std::vector<double> v = basic_solution(m, y);
  std::vector<double> logq(a.cols(), 0.0), nu(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t r = 0; r < a.rows(); ++r) logq[j] += a.matrix()(r, j).get_d() * v[r];
    nu[j] = bv.nu[j].get_d();
  }
  auto h = [&](double t) {
    double s = -1.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += std::exp(logq[j] + nu[j] * t);
    return s;
  };
  // Every root has q_i exp(nu_i t) <= 1 for all i.
  double lo = -HUGE_VAL, hi = HUGE_VAL;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    if (nu[j] > 0) hi = std::min(hi, -logq[j] / nu[j]);
    if (nu[j] < 0) lo = std::max(lo, -logq[j] / nu[j]);
  }
  OracleCount out;
  const double tol = kSectionTolerance;
  if (lo == -HUGE_VAL) {
    // nu >= 0: h increases from (floor mass - 1) to h(hi) >= 0.
    double width = 1.0;
    while (h(hi - width) >= -tol && width < 1e6) width *= 2;
    int changes = 0;
    double prev = h(hi - width);
    out.grid_min = prev;
    for (std::size_t k = 1; k <= grid; ++k) {
      const double cur = h(hi - width + width * static_cast<double>(k) / static_cast<double>(grid));
      if ((prev < 0) != (cur < 0)) ++changes;
      prev = cur;
    }
    double floor_mass = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (nu[j] == 0) floor_mass += std::exp(logq[j]);
    if (changes > 0) out.count = 1;
    else out.count = std::abs(floor_mass - 1.0) <= tol ? 1 : 0;
    return out;
  }
  if (lo > hi) {
    out.grid_min = h(0.5 * (lo + hi));
    return out;
  }
  int changes = 0;
  double prev = h(lo);
  out.grid_min = prev;
  for (std::size_t k = 1; k <= grid; ++k) {
    const double cur = h(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(grid));
    out.grid_min = std::min(out.grid_min, cur);
    if ((prev < 0) != (cur < 0)) ++changes;
    prev = cur;
  }
  if (changes >= 2) {
    out.count = 2;
    return out;
  }
  const double mn = golden_min(h, lo, hi);
  out.grid_min = std::min(out.grid_min, mn);
  if (mn < -tol) out.count = 2;
  else if (mn <= tol) out.count = 1;
  return out;
}

}  // namespace toric
