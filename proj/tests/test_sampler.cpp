#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "models.hpp"
#include "toric/errors.hpp"
#include "toric/geometry.hpp"
#include "toric/sampler.hpp"

using namespace toric;

namespace {

double sup_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

std::vector<double> observe(const std::vector<double>& p, const IndexSet& e) {
  std::vector<double> out;
  for (std::size_t i : e) out.push_back(p[i]);
  return out;
}

RatVector observe_q(const std::vector<double>& p, const IndexSet& e) {
  RatVector out;
  for (std::size_t i : e) out.emplace_back(p[i]);
  return out;
}

}  // namespace

TEST_CASE("counter rng is deterministic and uniform-ish") {
  CounterRng a(42), b(42), c(43);
  CHECK(a.bits(7) == b.bits(7));
  CHECK(a.bits(7) != c.bits(7));
  double mean = 0;
  for (int i = 0; i < 10000; ++i) {
    const double u = a.uniform(static_cast<std::uint64_t>(i));
    CHECK(u > 0);
    CHECK(u < 1);
    mean += u;
  }
  CHECK(mean / 10000 == doctest::Approx(0.5).epsilon(0.02));
  CHECK(a.substream(1).bits(0) != a.substream(2).bits(0));
}

TEST_CASE("ips examples") {
  auto sq = testmodels::square().a;
  auto r = ips_fit(sq, RatVector{1, Rational(1, 2), Rational(1, 2)});
  for (double x : r.p) CHECK(x == doctest::Approx(0.25).epsilon(1e-12));
  auto v = ips_fit(sq, to_rational(sq.column(3)));
  CHECK(v.face == IndexSet{3});
  CHECK(v.p[3] == doctest::Approx(1.0));
  CHECK(v.p[0] == 0.0);
  CHECK_THROWS_AS(ips_fit(sq, RatVector{3, 0, 0}), DomainError);
  // edge {1,2} of the square: y = x * (1/2) etc.
  auto edge = ips_fit(sq, RatVector{Rational(3, 2), Rational(1, 2), 0});
  CHECK(edge.face == IndexSet{0, 1});
  CHECK(edge.p[0] == doctest::Approx(0.5));
}

TEST_CASE("ips round trip and model samples") {
  SampleConfig cfg;
  cfg.seed = 3;
  cfg.count = 40;
  for (const auto& m : testmodels::example_models()) {
    auto pts = sample_model(m.a, cfg);
    CHECK(pts == sample_model(m.a, cfg));
    for (const auto& p : pts) {
      double s = 0;
      for (double x : p) {
        CHECK(x > 0);
        s += x;
      }
      CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(variety_residual(m.a, p) < 1e-10);
      auto fit = ips_fit(m.a, moment_map(m.a, p), cfg);
      CHECK(sup_distance(fit.p, p) < 1e-8);
    }
  }
}

TEST_CASE("face samples have facial supports") {
  SampleConfig cfg;
  cfg.count = 5;
  for (const auto& m : testmodels::example_models()) {
    for (const auto& f : all_facial_sets(m.a)) {
      if (f.indices.empty()) continue;
      for (const auto& p : sample_face(m.a, f.indices, cfg)) CHECK(support(p) == f.indices);
    }
  }
}

TEST_CASE("branch locus samples") {
  SampleConfig cfg;
  cfg.count = 30;
  cfg.seed = 8;
  for (const auto& m : {testmodels::tri2pts(), testmodels::square(), testmodels::blob()}) {
    ObservedSet e(m.a, m.e);
    auto nu = branch_vector(m.a, e).nu;
    auto bs = sample_branch_locus(m.a, e, cfg);
    CHECK(bs.reason.empty());
    REQUIRE(bs.points.size() == cfg.count);
    for (const auto& p : bs.points) {
      double d = 0;
      for (std::size_t i = 0; i < p.size(); ++i) d += nu[i].get_d() * p[i];
      CHECK(std::abs(d) <= 1e-8);
      CHECK(variety_residual(m.a, p) < 1e-8);
      auto lab = classify_observation(m.a, e, observe_q(p, m.e));
      CHECK(lab.region == Region::kBoundary);
      CHECK(lab.provenance == Provenance::kBranchImage);
    }
  }
  auto h = testmodels::hierarchical();
  auto hb = sample_branch_locus(h.a, ObservedSet(h.a, h.e), cfg);
  CHECK(hb.points.empty());
  CHECK(hb.reason == "E in proper facial set");
}

TEST_CASE("brute force oracle examples") {
  auto s = testmodels::square();
  ObservedSet e(s.a, s.e);
  CHECK(brute_force_completions(s.a, e, {1.0 / 6, 1.0 / 3}).count == 2);
  CHECK(brute_force_completions(s.a, e, {0.25, 0.25}).count == 1);
  CHECK(brute_force_completions(s.a, e, {0.5, 0.5}).count == 0);
  auto h = testmodels::hierarchical();
  ObservedSet eh(h.a, h.e);
  CHECK(brute_force_completions(h.a, eh, {0.1, 0.1, 0.1, 0.05, 0.2}).count == 1);
  CHECK(brute_force_completions(h.a, eh, {0.2, 0.2, 0.2, 0.2, 0.2}).count == 0);
}

TEST_CASE("oracle agrees with enumeration") {
  for (const auto& m : testmodels::example_models()) {
    ObservedSet e(m.a, m.e);
    CounterRng rng(17, m.a.cols());
    for (std::uint64_t trial = 0; trial < 150; ++trial) {
      std::vector<double> pe(m.e.size());
      const double scale = rng.uniform(1000 + trial, 0.05, 1.2);
      for (std::size_t i = 0; i < pe.size(); ++i)
        pe[i] = scale * rng.uniform(trial * 16 + i) / static_cast<double>(pe.size());
      RatVector pq;
      for (double x : pe) pq.emplace_back(x);
      auto r = enumerate_completions(m.a, e, pq);
      CHECK(brute_force_completions(m.a, e, pe).count == static_cast<int>(r.completions.size()));
    }
  }
}
