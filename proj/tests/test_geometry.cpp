#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "models.hpp"
#include "toric/errors.hpp"
#include "toric/geometry.hpp"

using namespace toric;

namespace {

// Facial test done independently: enumerate subsets and compare with an
// explicit check of the witness.
bool witness_ok(const ModelMatrix& a, const IndexSet& f, const RatVector& v) {
  for (std::size_t j = 0; j < a.cols(); ++j) {
    Rational d = dot(a.column(j), v);
    bool in = std::binary_search(f.begin(), f.end(), j);
    if (in && d != 0) return false;
    if (!in && d <= 0) return false;
  }
  return true;
}

std::vector<IndexSet> sets_of(const std::vector<FacialSet>& fs) {
  std::vector<IndexSet> out;
  for (const auto& f : fs) out.push_back(f.indices);
  return out;
}

IndexSet intersect(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

TEST_CASE("linear programs") {
  RationalLP lp;
  lp.nvars = 2;
  lp.add({1, 1}, Relation::kLe, 4);
  lp.add({1, 3}, Relation::kLe, 6);
  lp.objective = {-1, -2};
  auto s = solve_lp(lp);
  REQUIRE(s.status == LPStatus::kOptimal);
  CHECK(s.value == -5);
  CHECK(s.x == RatVector{3, 1});

  RationalLP inf;
  inf.nvars = 1;
  inf.add({1}, Relation::kGe, 2);
  inf.add({1}, Relation::kLe, 1);
  CHECK(solve_lp(inf).status == LPStatus::kInfeasible);

  RationalLP unb;
  unb.nvars = 1;
  unb.free_vars = {true};
  unb.objective = {1};
  unb.add({1}, Relation::kLe, 0);
  CHECK(solve_lp(unb).status == LPStatus::kUnbounded);

  // degenerate vertex with a cycling-prone pattern
  RationalLP deg;
  deg.nvars = 4;
  deg.add({Rational(1, 2), Rational(-11, 2), Rational(-5, 2), 9}, Relation::kLe, 0);
  deg.add({Rational(1, 2), Rational(-3, 2), Rational(-1, 2), 1}, Relation::kLe, 0);
  deg.add({1, 0, 0, 0}, Relation::kLe, 1);
  deg.objective = {-10, 57, 9, 24};
  auto d = solve_lp(deg);
  REQUIRE(d.status == LPStatus::kOptimal);
  CHECK(d.value == -1);
}

TEST_CASE("facial set examples") {
  auto t = testmodels::tri2pts().a;
  auto v = is_facial_set(t, {0, 1, 2, 3, 4});
  REQUIRE(v);
  CHECK(is_zero(*v));
  auto w = is_facial_set(t, {0, 1});
  REQUIRE(w);
  CHECK(witness_ok(t, {0, 1}, *w));
  CHECK(witness_ok(t, {0, 1}, RatVector{0, 0, 1}));
  CHECK_FALSE(is_facial_set(testmodels::blob().a, {1, 3}));
}

TEST_CASE("minimal facial sets") {
  auto tri = testmodels::triangle_with_center();
  CHECK(minimal_facial_set(tri, {3}).indices == IndexSet{0, 1, 2, 3});
  auto h = testmodels::hierarchical();
  auto f = minimal_facial_set(h.a, h.e);
  CHECK(f.indices == IndexSet{0, 1, 2, 3, 4, 5});
  CHECK(witness_ok(h.a, f.indices, f.inner_normal));
  // column 4 is a vertex of the square polytope
  auto sq = testmodels::square().a;
  CHECK(minimal_facial_set(sq, {3}).indices == IndexSet{3});
  for (const auto& m : testmodels::example_models())
    for (const auto& g : all_facial_sets(m.a)) CHECK(minimal_facial_set(m.a, g.indices).indices == g.indices);
}

TEST_CASE("facial set enumeration") {
  auto tri = testmodels::triangle_with_center();
  auto fs = sets_of(all_facial_sets(tri));
  std::vector<IndexSet> expect = {{}, {0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2, 3}};
  CHECK(fs == expect);

  ModelMatrix simplex(IntMatrix{{2, 0, 0}, {0, 2, 0}, {0, 0, 2}});
  CHECK(all_facial_sets(simplex).size() == 8);

  for (const auto& f : all_facial_sets(testmodels::blob().a)) {
    if (f.indices.size() == 5) continue;
    CHECK_FALSE(f.contains(3));
    CHECK_FALSE(f.contains(4));
  }

  std::vector<std::vector<long>> wide(1, std::vector<long>(21, 1));
  CHECK_THROWS_AS(all_facial_sets(ModelMatrix(IntMatrix::from_rows(wide))), CapacityError);
}

TEST_CASE("facial set structure properties") {
  for (const auto& m : testmodels::example_models()) {
    auto fs = all_facial_sets(m.a);
    std::set<IndexSet> all;
    for (const auto& f : fs) {
      all.insert(f.indices);
      CHECK(witness_ok(m.a, f.indices, f.inner_normal));
    }
    for (const auto& f : fs)
      for (const auto& g : fs) CHECK(all.count(intersect(f.indices, g.indices)) == 1);
    // brute force over all subsets for small n
    std::size_t count = 0;
    for (unsigned mask = 0; mask < (1u << m.a.cols()); ++mask) {
      IndexSet s;
      for (std::size_t i = 0; i < m.a.cols(); ++i)
        if (mask & (1u << i)) s.push_back(i);
      if (is_facial_set(m.a, s)) ++count;
    }
    CHECK(count == fs.size());
  }
}

TEST_CASE("closure operator properties") {
  std::mt19937 rng(5);
  for (const auto& m : testmodels::example_models()) {
    const std::size_t n = m.a.cols();
    for (int trial = 0; trial < 20; ++trial) {
      IndexSet s, t;
      for (std::size_t i = 0; i < n; ++i) {
        const bool in_s = rng() % 3 == 0;
        if (in_s) s.push_back(i);
        if (in_s || rng() % 3 == 0) t.push_back(i);
      }
      auto fs = minimal_facial_set(m.a, s).indices;
      auto ft = minimal_facial_set(m.a, t).indices;
      CHECK(std::includes(fs.begin(), fs.end(), s.begin(), s.end()));
      CHECK(std::includes(ft.begin(), ft.end(), fs.begin(), fs.end()));
      CHECK(minimal_facial_set(m.a, fs).indices == fs);
    }
  }
}

TEST_CASE("moment map and polytope membership") {
  auto sq = testmodels::square().a;
  CHECK(moment_map(sq, RatVector{Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)}) ==
        RatVector{1, Rational(1, 2), Rational(1, 2)});
  CHECK(moment_map(sq, RatVector{0, 1, 0, 0}) == to_rational(sq.column(1)));
  auto t = testmodels::tri2pts();
  RatVector mid = moment_map(t.a, RatVector{0, 0, 0, Rational(1, 2), Rational(1, 2)});
  CHECK(mid == RatVector{Rational(3, 2), Rational(3, 2), 1});
  CHECK(in_span_cap_polytope(t.a, t.e, mid));
  CHECK(in_span_cap_polytope(t.a, t.e, to_rational(t.a.column(3))));
  CHECK_FALSE(in_span_cap_polytope(t.a, t.e, RatVector{0, 0, 4}));
  CHECK_FALSE(in_polytope(t.a, RatVector{5, 0, 0}));
  CHECK(*face_of_point(t.a, RatVector{2, 2, 0}) == IndexSet{0, 1});
  CHECK(*face_of_point(t.a, mid) == IndexSet{0, 1, 2, 3, 4});
}
