#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "models.hpp"
#include "toric/exactla.hpp"

using namespace toric;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

// Rank by fraction-free elimination on doubles is not exact enough; use
// rational Gaussian elimination written independently here.
std::size_t oracle_rank(const IntMatrix& m) {
  std::vector<RatVector> a(m.rows(), RatVector(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j);
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < m.cols(); ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

bool is_hnf(const IntMatrix& h) {
  std::size_t last = 0;
  bool zero_seen = false;
  for (std::size_t r = 0; r < h.rows(); ++r) {
    std::size_t c = 0;
    while (c < h.cols() && h(r, c) == 0) ++c;
    if (c == h.cols()) {
      zero_seen = true;
      continue;
    }
    if (zero_seen) return false;
    if (r > 0 && c <= last && !(r == 0)) {
      // pivot columns strictly increase
      if (c <= last) return false;
    }
    if (h(r, c) <= 0) return false;
    for (std::size_t i = 0; i < r; ++i)
      if (h(i, c) < 0 || h(i, c) >= h(r, c)) return false;
    last = c;
  }
  return true;
}

}  // namespace

TEST_CASE("hermite normal form examples") {
  auto id = IntMatrix::identity(2);
  auto r = hermite_normal_form(id);
  CHECK(r.H == id);
  CHECK(r.U == id);

  auto m = IntMatrix{{2, 4}, {1, 2}};
  auto h = hermite_normal_form(m);
  CHECK(h.H == IntMatrix{{1, 2}, {0, 0}});
  CHECK(h.U * m == h.H);

  auto sq = testmodels::square().a.matrix();
  auto hs = hermite_normal_form(sq);
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < hs.H.rows(); ++i)
    if (!is_zero(hs.H.row(i))) ++nonzero;
  CHECK(nonzero == 3);
  CHECK(oracle_rank(sq) == 3);
}

TEST_CASE("kernel examples") {
  auto k = integer_kernel_basis(testmodels::square().a.matrix());
  REQUIRE(k.size() == 1);
  IntVector u = k[0];
  if (u[0] < 0)
    for (auto& x : u) x = -x;
  CHECK(u == IntVector{1, -1, -1, 1});

  CHECK(integer_kernel_basis(IntMatrix{{1, 0}, {0, 1}, {1, 1}}).empty());

  auto ae = testmodels::blob().a.matrix().select_columns({3, 4}).transposed();
  auto w = integer_kernel_basis(ae);
  REQUIRE(w.size() == 1);
  IntVector om = w[0];
  if (om[0] < 0)
    for (auto& x : om) x = -x;
  CHECK(om == IntVector{1, -4, 1});
}

TEST_CASE("rank and solve") {
  CHECK(rank(testmodels::hierarchical().a.matrix()) == 6);
  CHECK(rank(testmodels::tri2pts().a.matrix()) == 3);
  RatVector b{Rational(1, 3), Rational(-2), Rational(5, 7)};
  auto x = solve_rational(IntMatrix::identity(3), b);
  REQUIRE(x);
  CHECK(*x == b);
  CHECK_FALSE(solve_rational(IntMatrix{{1, 1}, {2, 2}}, RatVector{1, 3}).has_value());
  auto y = solve_rational(IntMatrix{{1, 1, 0}}, RatVector{Rational(2)});
  REQUIRE(y);
  CHECK(*y == RatVector{2, 0, 0});
}

TEST_CASE("rational text format") {
  CHECK(format_rational(Rational(1, 6)) == "1/6");
  CHECK(format_rational(Rational(-4, 2)) == "-2");
  CHECK(parse_rational("2/6") == Rational(1, 3));
  CHECK(parse_rational("0.125") == Rational(1, 8));
  CHECK(parse_rational("-3") == Rational(-3));
  CHECK(format_vector(RatVector{Rational(1, 6), Rational(1, 3)}) == "1/6 1/3");
}

TEST_CASE("lattice properties on random matrices") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = 1 + trial % 4, c = 2 + trial % 6;
    IntMatrix m = random_matrix(rng, r, c, trial % 3 == 0 ? -3 : 0, 4);
    auto basis = integer_kernel_basis(m);
    for (const auto& u : basis) {
      CHECK(is_zero(m * u));
      CHECK(content(u) == 1);
    }
    CHECK(rank(m) == oracle_rank(m));
    CHECK(rank(m) + basis.size() == m.cols());
    if (!basis.empty()) CHECK(oracle_rank(IntMatrix::from_rows(basis)) == basis.size());
    auto h = hermite_normal_form(m);
    CHECK(h.U * m == h.H);
    CHECK(is_hnf(h.H));
    CHECK(hermite_normal_form(h.H).H == h.H);
  }
}
