#include "toric/boundary.hpp"

#include <algorithm>
#include <cmath>

#include "toric/errors.hpp"
#include "toric/geometry.hpp"

namespace toric {

RingPtr observed_ring(const RingPtr& full, const IndexSet& e) {
  std::vector<std::string> names;
  for (std::size_t i : e) names.push_back(full->name(i));
  return Ring::make(std::move(names));
}

namespace {

// Split off the monomial content of each factor as single variables.
std::vector<Polynomial> split_monomials(const std::vector<Polynomial>& factors) {
  std::vector<Polynomial> out;
  auto add = [&](const Polynomial& f) {
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  };
  for (const auto& f : factors) {
    const RingPtr& ring = f.ring();
    Monomial g = f.terms().front().monomial;
    for (const auto& t : f.terms()) g = g.gcd(t.monomial);
    Polynomial rest = f;
    for (std::size_t v = 0; v < ring->size(); ++v) {
      if (g[v] == 0) continue;
      const Polynomial x = Polynomial::variable(ring, v);
      add(x);
      rest = *divide_exact(rest, x.pow(g[v]));
    }
    if (!rest.is_constant()) add(rest.normalized());
  }
  return out;
}

std::vector<Polynomial> radical_of_monomial_ideal(const std::vector<Polynomial>& gens) {
  std::vector<Monomial> supports;
  for (const auto& g : gens) {
    if (g.num_terms() != 1) return {};
    std::vector<std::uint32_t> e(g.nvars(), 0);
    for (std::size_t v = 0; v < g.nvars(); ++v) e[v] = g.terms().front().monomial[v] > 0 ? 1 : 0;
    supports.emplace_back(std::move(e));
  }
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < supports.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < supports.size() && !redundant; ++j)
      if (j != i && supports[j].divides(supports[i]) && (!(supports[j] == supports[i]) || j < i))
        redundant = true;
    if (!redundant) out.push_back(Polynomial::monomial(gens.front().ring(), supports[i]));
  }
  return out;
}

Eliminant eliminate_to_observed(const PolyIdeal& ideal, const ObservedSet& e, const RingPtr& full) {
  const RingPtr target = observed_ring(full, e.indices());
  IndexSet drop;
  std::vector<std::size_t> mapping(full->size(), target->size());
  for (std::size_t i = 0, k = 0; i < full->size(); ++i) {
    if (k < e.size() && e.indices()[k] == i) mapping[i] = k++;
    else drop.push_back(i);
  }
  PolyIdeal elim = eliminate(ideal, drop);
  std::vector<Polynomial> gens;
  for (const auto& g : elim.generators()) gens.push_back(g.rename(target, mapping));
  Eliminant out(target);
  out.ideal = PolyIdeal(target, gens);
  out.principal = gens.size() <= 1;
  if (gens.size() == 1 && !gens[0].is_constant())
    out.factors = split_monomials(squarefree_part(gens[0]));
  if (!gens.empty()) out.monomial_radical = radical_of_monomial_ideal(gens);
  if (gens.size() == 1 && gens[0].is_constant()) out.note = "unit ideal";
  if (gens.empty()) out.note = "zero ideal";
  return out;
}

std::vector<Polynomial> base_generators(const ModelMatrix& a, const RingPtr& full) {
  if (full->size() != a.cols()) throw PreconditionError("ring size differs from column count");
  std::vector<Polynomial> gens = toric_ideal(a, full).generators();
  Polynomial sum = Polynomial::constant(full, -1);
  for (std::size_t i = 0; i < full->size(); ++i) sum = sum + Polynomial::variable(full, i);
  gens.push_back(sum);
  return gens;
}

}  // namespace

Eliminant branch_image_eliminant(const ModelMatrix& a, const ObservedSet& e, const RingPtr& full) {
  e.require_rank_ok();
  const BranchVector bv = branch_vector(a, e);
  if (bv.nonnegative) {
    Eliminant out(observed_ring(full, e.indices()));
    out.principal = true;
    out.empty_locus = true;
    out.note = "branch locus empty: E in proper facial set";
    return out;
  }
  std::vector<Polynomial> gens = base_generators(a, full);
  Polynomial lin(full);
  for (std::size_t i = 0; i < full->size(); ++i)
    if (bv.nu[i] != 0) lin = lin + Polynomial::variable(full, i) * Rational(bv.nu[i]);
  gens.push_back(lin);
  return eliminate_to_observed(PolyIdeal(full, gens), e, full);
}

Eliminant model_boundary_eliminant(const ModelMatrix& a, const ObservedSet& e,
                                   const RingPtr& full) {
  e.require_rank_ok();
  std::vector<Polynomial> gens = base_generators(a, full);
  gens.push_back(Polynomial::monomial(full, Monomial(std::vector<std::uint32_t>(full->size(), 1))));
  return eliminate_to_observed(PolyIdeal(full, gens), e, full);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kVanishing: return "vanishing";
    case Verdict::kSpurious: return "spurious";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "?";
}

Validation validate_component_by_sampling(const Polynomial& factor,
                                          const std::vector<std::vector<double>>& samples,
                                          double tol, double fraction) {
  Validation out;
  out.samples = samples.size();
  if (samples.empty()) return out;
  if (factor.is_constant()) {
    out.verdict = Verdict::kSpurious;
    return out;
  }
  const double scale = tol * factor.coefficient_norm_l1().get_d();
  std::size_t hits = 0;
  for (const auto& s : samples)
    if (std::abs(factor.evaluate(s)) <= scale) ++hits;
  out.vanishing_fraction = static_cast<double>(hits) / static_cast<double>(samples.size());
  out.verdict = out.vanishing_fraction >= fraction ? Verdict::kVanishing : Verdict::kSpurious;
  return out;
}

namespace {

std::vector<std::vector<double>> project(const std::vector<std::vector<double>>& pts,
                                         const IndexSet& e) {
  std::vector<std::vector<double>> out;
  for (const auto& p : pts) {
    std::vector<double> s;
    for (std::size_t i : e) s.push_back(p[i]);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<IndexSet> facets(const ModelMatrix& a) {
  std::vector<FacialSet> all = all_facial_sets(a);
  std::vector<IndexSet> out;
  for (const auto& f : all) {
    if (f.indices.size() == a.cols() || f.indices.empty()) continue;
    bool maximal = true;
    for (const auto& g : all) {
      if (g.indices.size() == a.cols() || g.indices.size() <= f.indices.size()) continue;
      if (std::includes(g.indices.begin(), g.indices.end(), f.indices.begin(), f.indices.end()))
        maximal = false;
    }
    if (maximal) out.push_back(f.indices);
  }
  return out;
}

Validation best_of(const Polynomial& f, const std::vector<std::vector<std::vector<double>>>& sets) {
  Validation best;
  for (const auto& s : sets) {
    Validation v = validate_component_by_sampling(f, s);
    if (best.samples == 0 || v.vanishing_fraction > best.vanishing_fraction ||
        (v.vanishing_fraction == best.vanishing_fraction && v.verdict == Verdict::kVanishing))
      best = v;
  }
  return best;
}

}  // namespace

BoundaryReport algebraic_boundary(const ModelMatrix& a, const ObservedSet& e, const RingPtr& full,
                                  const SampleConfig& cfg) {
  BoundaryReport rep(observed_ring(full, e.indices()));
  rep.branch = branch_image_eliminant(a, e, full);
  rep.model_boundary = model_boundary_eliminant(a, e, full);

  std::vector<std::vector<double>> branch_samples;
  if (!rep.branch.empty_locus)
    branch_samples = project(sample_branch_locus(a, e, cfg).points, e.indices());
  std::vector<std::vector<std::vector<double>>> facet_samples;
  for (const auto& f : facets(a)) facet_samples.push_back(project(sample_face(a, f, cfg), e.indices()));

  for (const auto& f : rep.branch.factors)
    rep.factors.push_back({f, "branch", validate_component_by_sampling(f, branch_samples)});
  for (const auto& f : rep.model_boundary.factors)
    rep.factors.push_back({f, "model-boundary", best_of(f, facet_samples)});

  rep.radical_gap = !rep.branch.principal || !rep.model_boundary.principal;
  if (!rep.radical_gap) {
    Polynomial prod = Polynomial::constant(rep.ring, 1);
    bool any = false;
    for (const auto& f : rep.branch.factors) prod = prod * f, any = true;
    for (const auto& f : rep.model_boundary.factors) prod = prod * f, any = true;
    if (any) rep.radical_factors = squarefree_part(prod);
  }
  return rep;
}

}  // namespace toric
