#include <algorithm>
#include <map>

#include "toric/errors.hpp"
#include "toric/polyring.hpp"

namespace toric {

namespace {

// Working representation: terms sorted descending under the active order.
struct GTerm {
  Monomial m;
  Rational c;
};
using GPoly = std::vector<GTerm>;

class Engine {
 public:
  explicit Engine(const MonomialOrder& order) : order_(order) {}

  GPoly convert(const Polynomial& f) const {
    GPoly g;
    g.reserve(f.num_terms());
    for (const auto& t : f.terms()) g.push_back({t.monomial, t.coeff});
    std::sort(g.begin(), g.end(),
              [&](const GTerm& a, const GTerm& b) { return order_.compare(a.m, b.m) > 0; });
    return g;
  }

  Polynomial convert(const GPoly& g, const RingPtr& ring) const {
    std::vector<Term> t;
    t.reserve(g.size());
    for (const auto& x : g) t.push_back({x.m, x.c});
    return Polynomial::from_terms(ring, std::move(t));
  }

  static void make_monic(GPoly& g) {
    if (g.empty() || g.front().c == 1) return;
    const Rational inv = 1 / g.front().c;
    for (auto& t : g) t.c *= inv;
  }

  // p[pfrom..] - c * m * g[gfrom..]
  GPoly sub_scaled(const GPoly& p, std::size_t pfrom, const Rational& c, const Monomial& m,
                   const GPoly& g, std::size_t gfrom) const {
    GPoly r;
    r.reserve(p.size() - pfrom + g.size() - gfrom);
    std::size_t i = pfrom, j = gfrom;
    while (i < p.size() || j < g.size()) {
      if (j == g.size()) {
        r.push_back(p[i++]);
        continue;
      }
      Monomial gm = g[j].m * m;
      if (i == p.size()) {
        r.push_back({std::move(gm), -c * g[j].c});
        ++j;
        continue;
      }
      const int cmp = order_.compare(p[i].m, gm);
      if (cmp > 0) {
        r.push_back(p[i++]);
      } else if (cmp < 0) {
        r.push_back({std::move(gm), -c * g[j].c});
        ++j;
      } else {
        Rational v = p[i].c - c * g[j].c;
        if (sgn(v) != 0) r.push_back({std::move(gm), std::move(v)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  // Full reduction of p by monic basis elements. `skip` excludes one index.
  GPoly reduce(GPoly p, const std::vector<GPoly>& basis,
               std::size_t skip = static_cast<std::size_t>(-1)) const {
    GPoly rem;
    std::size_t head = 0;
    while (head < p.size()) {
      const GTerm& lead = p[head];
      std::size_t k = 0;
      for (; k < basis.size(); ++k) {
        if (k == skip || basis[k].empty()) continue;
        if (basis[k].front().m.divides(lead.m)) break;
      }
      if (k == basis.size()) {
        rem.push_back(lead);
        ++head;
        continue;
      }
      const Monomial q = lead.m / basis[k].front().m;
      const Rational c = lead.c;
      p = sub_scaled(p, head + 1, c, q, basis[k], 1);
      head = 0;
    }
    return rem;
  }

  GPoly spoly(const GPoly& f, const GPoly& g, const Monomial& l) const {
    // monic f, g: (l/lm f) f - (l/lm g) g, leading terms cancel
    GPoly lhs;
    const Monomial mf = l / f.front().m;
    lhs.reserve(f.size());
    for (std::size_t i = 1; i < f.size(); ++i) lhs.push_back({f[i].m * mf, f[i].c});
    return sub_scaled(lhs, 0, Rational(1), l / g.front().m, g, 1);
  }

  bool less(const Monomial& a, const Monomial& b) const { return order_.compare(a, b) < 0; }

 private:
  const MonomialOrder& order_;
};

struct Pair {
  std::size_t i, j;
  Monomial lcm;
};

}  // namespace

std::vector<Polynomial> buchberger(const std::vector<Polynomial>& gens,
                                   const MonomialOrder& order) {
  if (gens.empty()) return {};
  const RingPtr ring = gens.front().ring();
  if (order.kind() == MonomialOrder::Kind::kBlockElimination &&
      order.dropped().size() != ring->size())
    throw PreconditionError("elimination order mask has wrong length");
  Engine eng(order);

  std::vector<GPoly> basis;
  std::vector<Pair> pending;
  std::vector<std::vector<char>> is_pending;

  auto add = [&](GPoly g) {
    Engine::make_monic(g);
    const std::size_t idx = basis.size();
    basis.push_back(std::move(g));
    for (auto& row : is_pending) row.push_back(0);
    is_pending.emplace_back(basis.size(), 0);
    for (std::size_t k = 0; k < idx; ++k) {
      if (basis[k].empty()) continue;
      pending.push_back({k, idx, basis[k].front().m.lcm(basis[idx].front().m)});
      is_pending[k][idx] = is_pending[idx][k] = 1;
    }
  };

  for (const auto& f : gens) {
    if (!(*f.ring() == *ring)) throw PreconditionError("generators from different rings");
    GPoly g = eng.reduce(eng.convert(f), basis);
    if (g.empty()) continue;
    if (g.front().m.is_one()) return {Polynomial::constant(ring, 1)};
    add(std::move(g));
  }

  while (!pending.empty()) {
    auto best = pending.begin();
    for (auto it = pending.begin() + 1; it != pending.end(); ++it) {
      const int c = order.compare(it->lcm, best->lcm);
      if (c < 0 || (c == 0 && std::tie(it->j, it->i) < std::tie(best->j, best->i))) best = it;
    }
    const Pair pr = *best;
    *best = pending.back();
    pending.pop_back();
    is_pending[pr.i][pr.j] = is_pending[pr.j][pr.i] = 0;

    const GPoly& f = basis[pr.i];
    const GPoly& g = basis[pr.j];
    if (f.front().m.coprime(g.front().m)) continue;
    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == pr.i || k == pr.j || basis[k].empty()) continue;
      if (!basis[k].front().m.divides(pr.lcm)) continue;
      if (!is_pending[pr.i][k] && !is_pending[pr.j][k]) chain = true;
    }
    if (chain) continue;

    GPoly h = eng.reduce(eng.spoly(f, g, pr.lcm), basis);
    if (h.empty()) continue;
    if (h.front().m.is_one()) return {Polynomial::constant(ring, 1)};
    add(std::move(h));
  }

  // Minimal basis: drop elements whose leading monomial is divisible by
  // another leading monomial (first occurrence wins among equals).
  std::vector<GPoly> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      const Monomial& a = basis[i].front().m;
      const Monomial& b = basis[j].front().m;
      if (b.divides(a) && (!(a == b) || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  // Tail reduction.
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    GPoly tail(minimal[i].begin() + 1, minimal[i].end());
    GPoly red = eng.reduce(std::move(tail), minimal, i);
    GPoly g;
    g.reserve(red.size() + 1);
    g.push_back(minimal[i].front());
    for (auto& t : red) g.push_back(std::move(t));
    minimal[i] = std::move(g);
  }
  std::sort(minimal.begin(), minimal.end(), [&](const GPoly& a, const GPoly& b) {
    return eng.less(a.front().m, b.front().m);
  });
  std::vector<Polynomial> out;
  out.reserve(minimal.size());
  for (const auto& g : minimal) out.push_back(eng.convert(g, ring).normalized());
  return out;
}

Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis,
                       const MonomialOrder& order) {
  Engine eng(order);
  std::vector<GPoly> gb;
  gb.reserve(basis.size());
  for (const auto& b : basis) {
    GPoly g = eng.convert(b);
    Engine::make_monic(g);
    gb.push_back(std::move(g));
  }
  return eng.convert(eng.reduce(eng.convert(f), gb), f.ring());
}

// ------------------------------------------------------------ PolyIdeal

PolyIdeal::PolyIdeal(RingPtr ring, std::vector<Polynomial> gens)
    : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
  for (auto& g : gens) {
    if (!(*g.ring() == *ring_)) throw PreconditionError("ideal generator from another ring");
    if (!g.is_zero()) gens_.push_back(std::move(g));
  }
}

const std::vector<Polynomial>& PolyIdeal::groebner_basis(const MonomialOrder& order) const {
  const std::string key = order.key();
  {
    std::lock_guard lock(cache_->mutex);
    if (auto it = cache_->bases.find(key); it != cache_->bases.end()) return it->second;
  }
  std::vector<Polynomial> gb = buchberger(gens_, order);
  std::lock_guard lock(cache_->mutex);
  return cache_->bases.emplace(key, std::move(gb)).first->second;
}

bool PolyIdeal::contains(const Polynomial& f) const {
  if (f.is_zero()) return true;
  const auto& gb = groebner_basis(MonomialOrder::grevlex());
  return normal_form(f, gb, MonomialOrder::grevlex()).is_zero();
}

bool PolyIdeal::contains(const PolyIdeal& other) const {
  return std::all_of(other.gens_.begin(), other.gens_.end(),
                     [&](const Polynomial& g) { return contains(g); });
}

bool PolyIdeal::same_ideal(const PolyIdeal& other) const {
  return contains(other) && other.contains(*this);
}

bool PolyIdeal::is_zero() const { return gens_.empty(); }

bool PolyIdeal::is_unit() const {
  const auto& gb = groebner_basis(MonomialOrder::grevlex());
  return gb.size() == 1 && gb.front().is_constant() && !gb.front().is_zero();
}

bool PolyIdeal::is_principal() const {
  return groebner_basis(MonomialOrder::grevlex()).size() <= 1;
}

PolyIdeal PolyIdeal::operator+(const PolyIdeal& other) const { return with(other.gens_); }

PolyIdeal PolyIdeal::with(const std::vector<Polynomial>& extra) const {
  std::vector<Polynomial> g = gens_;
  g.insert(g.end(), extra.begin(), extra.end());
  return PolyIdeal(ring_, std::move(g));
}

// ------------------------------------------------------- elimination etc.

namespace {

RingPtr with_aux_variable(const RingPtr& ring) {
  std::string name = "_t";
  while (std::find(ring->names().begin(), ring->names().end(), name) != ring->names().end())
    name = "_" + name;
  std::vector<std::string> names = ring->names();
  names.push_back(name);
  return Ring::make(std::move(names));
}

// Bring a polynomial of the extended ring, free of the last variable, back.
Polynomial drop_aux(const Polynomial& f, const RingPtr& ring) {
  std::vector<std::size_t> mapping(ring->size() + 1);
  for (std::size_t i = 0; i < ring->size(); ++i) mapping[i] = i;
  mapping[ring->size()] = ring->size();  // out of range: must be unused
  return f.rename(ring, mapping);
}

}  // namespace

PolyIdeal eliminate(const PolyIdeal& ideal, const std::vector<std::size_t>& drop) {
  const RingPtr& ring = ideal.ring();
  std::vector<bool> mask(ring->size(), false);
  for (std::size_t d : drop) mask.at(d) = true;
  if (std::none_of(mask.begin(), mask.end(), [](bool b) { return b; })) {
    return PolyIdeal(ring, ideal.groebner_basis(MonomialOrder::grevlex()));
  }
  const auto& gb = ideal.groebner_basis(MonomialOrder::elimination(mask));
  std::vector<Polynomial> kept;
  for (const auto& g : gb) {
    bool uses = false;
    for (std::size_t d : drop) uses = uses || g.uses_variable(d);
    if (!uses) kept.push_back(g);
  }
  return PolyIdeal(ring, std::move(kept));
}

PolyIdeal saturate_by_coordinates(const PolyIdeal& ideal) {
  const RingPtr& ring = ideal.ring();
  const RingPtr big = with_aux_variable(ring);
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators()) gens.push_back(g.embed(big));
  std::vector<std::uint32_t> e(big->size(), 1);
  gens.push_back(Polynomial::monomial(big, Monomial(std::move(e))) -
                 Polynomial::constant(big, 1));
  PolyIdeal elim = eliminate(PolyIdeal(big, std::move(gens)), {ring->size()});
  std::vector<Polynomial> out;
  for (const auto& g : elim.generators()) out.push_back(drop_aux(g, ring));
  return PolyIdeal(ring, std::move(out));
}

std::vector<Polynomial> minimal_generators(const PolyIdeal& ideal) {
  std::vector<Polynomial> gb = ideal.groebner_basis(MonomialOrder::grevlex());
  const MonomialOrder grevlex = MonomialOrder::grevlex();
  std::stable_sort(gb.begin(), gb.end(), [&](const Polynomial& a, const Polynomial& b) {
    if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
    return grevlex.compare(a.leading_term(grevlex).monomial, b.leading_term(grevlex).monomial) < 0;
  });
  std::vector<Polynomial> kept;
  for (const auto& g : gb) {
    if (!kept.empty() && PolyIdeal(ideal.ring(), kept).contains(g)) continue;
    kept.push_back(g);
  }
  return kept;
}

std::optional<Polynomial> divide_exact(const Polynomial& f, const Polynomial& g) {
  if (g.is_zero()) throw PreconditionError("division by the zero polynomial");
  const MonomialOrder grevlex = MonomialOrder::grevlex();
  const Term& lg = g.terms().front();  // terms are grevlex-descending
  Polynomial rem = f;
  std::vector<Term> quot;
  while (!rem.is_zero()) {
    const Term& lr = rem.terms().front();
    if (!lg.monomial.divides(lr.monomial)) return std::nullopt;
    Term q{lr.monomial / lg.monomial, lr.coeff / lg.coeff};
    rem = rem - g * Polynomial::monomial(f.ring(), q.monomial, q.coeff);
    quot.push_back(std::move(q));
  }
  return Polynomial::from_terms(f.ring(), std::move(quot));
}

Polynomial polynomial_gcd(const Polynomial& f, const Polynomial& g) {
  const RingPtr& ring = f.ring();
  if (f.is_zero()) return g.normalized();
  if (g.is_zero()) return f.normalized();
  if (f.is_constant() || g.is_constant()) return Polynomial::constant(ring, 1);
  if (auto q = divide_exact(f, g)) return g.normalized();
  if (auto q = divide_exact(g, f)) return f.normalized();
  // <f> ∩ <g> = <lcm>, computed as (t f, (1 - t) g) ∩ Q[x].
  const RingPtr big = with_aux_variable(ring);
  const Polynomial t = Polynomial::variable(big, ring->size());
  const Polynomial one = Polynomial::constant(big, 1);
  PolyIdeal inter({big}, {t * f.embed(big), (one - t) * g.embed(big)});
  PolyIdeal elim = eliminate(inter, {ring->size()});
  if (elim.generators().size() != 1)
    throw std::logic_error("intersection of principal ideals is not principal");
  const Polynomial l = drop_aux(elim.generators().front(), ring);
  auto q = divide_exact(f * g, l);
  if (!q) throw std::logic_error("lcm does not divide f*g");
  return q->normalized();
}

std::vector<Polynomial> squarefree_part(const Polynomial& f) {
  if (f.is_zero()) throw PreconditionError("squarefree_part of the zero polynomial");
  const RingPtr& ring = f.ring();
  std::map<unsigned, Polynomial> by_multiplicity;
  auto record = [&](unsigned mult, const Polynomial& a) {
    auto it = by_multiplicity.find(mult);
    if (it == by_multiplicity.end()) by_multiplicity.emplace(mult, a);
    else it->second = it->second * a;
  };
  auto exact = [](const Polynomial& a, const Polynomial& b) {
    auto q = divide_exact(a, b);
    if (!q) throw std::logic_error("expected exact division in square-free decomposition");
    return *q;
  };

  Polynomial rest = f.normalized();
  for (std::size_t v = 0; v < ring->size() && !rest.is_constant(); ++v) {
    if (!rest.uses_variable(v)) continue;
    // Yun's algorithm with respect to variable v; the v-free content of
    // `rest` survives in `rest / product` and is handled by later variables.
    const Polynomial dv = rest.derivative(v);
    const Polynomial c = polynomial_gcd(rest, dv);
    Polynomial w = exact(rest, c);
    Polynomial y = exact(dv, c);
    Polynomial z = y - w.derivative(v);
    Polynomial product = Polynomial::constant(ring, 1);
    unsigned mult = 1;
    while (!w.is_constant()) {
      const Polynomial a = polynomial_gcd(w, z);
      if (!a.is_constant()) {
        record(mult, a);
        product = product * a.pow(mult);
      }
      w = exact(w, a);
      y = exact(z, a);
      z = y - w.derivative(v);
      ++mult;
    }
    rest = exact(rest, product);
  }
  std::vector<Polynomial> out;
  for (auto& [mult, a] : by_multiplicity) out.push_back(a.normalized());
  return out;
}

}  // namespace toric
