// toric-cli: command-line front end over the library.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "toric/boundary.hpp"
#include "toric/completion.hpp"
#include "toric/errors.hpp"
#include "toric/geometry.hpp"
#include "toric/sampler.hpp"

using namespace toric;
using json = nlohmann::json;

namespace {

struct SchemaError : std::runtime_error {
  SchemaError(const std::string& pointer, const std::string& msg)
      : std::runtime_error(pointer + ": " + msg) {}
};

struct Problem {
  ModelMatrix a{IntMatrix{{1}}};
  IndexSet e;                    // 0-based
  std::optional<RatVector> p_e;
  std::optional<RatVector> p;    // full point, for `feasible`
  std::vector<std::string> names;
  SampleConfig sample;
  long max_denominator = 1000000;
  std::size_t grid = 100;
};

Rational rational_at(const json& v, const std::string& ptr) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const ParseError& err) {
      throw SchemaError(ptr, err.what());
    }
  }
  throw SchemaError(ptr, "expected a rational string such as \"1/6\"");
}

RatVector rational_vector(const json& v, const std::string& ptr) {
  if (!v.is_array()) throw SchemaError(ptr, "expected an array");
  RatVector out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(rational_at(v[i], ptr + "/" + std::to_string(i)));
  return out;
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("", "cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& err) {
    throw SchemaError("", std::string("invalid JSON: ") + err.what());
  }
  if (!doc.is_object()) throw SchemaError("", "expected an object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    static const std::vector<std::string> known = {"A", "E", "p_E", "p", "names", "options"};
    if (std::find(known.begin(), known.end(), it.key()) == known.end())
      throw SchemaError("/" + it.key(), "unknown field");
  }
  if (!doc.contains("A")) throw SchemaError("/A", "required field missing");
  const json& ja = doc["A"];
  if (!ja.is_array() || ja.empty()) throw SchemaError("/A", "expected a non-empty array of rows");
  std::vector<IntVector> rows;
  for (std::size_t r = 0; r < ja.size(); ++r) {
    const std::string rp = "/A/" + std::to_string(r);
    if (!ja[r].is_array() || ja[r].empty()) throw SchemaError(rp, "expected a non-empty array");
    if (ja[r].size() != ja[0].size()) throw SchemaError(rp, "row length differs from row 0");
    IntVector row;
    for (std::size_t c = 0; c < ja[r].size(); ++c) {
      const json& x = ja[r][c];
      const std::string cp = rp + "/" + std::to_string(c);
      if (x.is_number_integer()) {
        row.emplace_back(x.get<long>());
      } else if (x.is_string()) {
        try {
          row.emplace_back(x.get<std::string>(), 10);
        } catch (const std::invalid_argument&) {
          throw SchemaError(cp, "expected an integer");
        }
      } else {
        throw SchemaError(cp, "expected an integer");
      }
    }
    rows.push_back(std::move(row));
  }
  Problem pr;
  pr.a = ModelMatrix(IntMatrix::from_rows(rows));
  const std::size_t n = pr.a.cols();

  if (doc.contains("E")) {
    const json& je = doc["E"];
    if (!je.is_array()) throw SchemaError("/E", "expected an array of 1-based indices");
    for (std::size_t i = 0; i < je.size(); ++i) {
      const std::string ip = "/E/" + std::to_string(i);
      if (!je[i].is_number_integer()) throw SchemaError(ip, "expected an integer");
      const long k = je[i].get<long>();
      if (k < 1 || static_cast<std::size_t>(k) > n)
        throw SchemaError(ip, "index out of range 1.." + std::to_string(n));
      pr.e.push_back(static_cast<std::size_t>(k - 1));
    }
  }
  if (doc.contains("p_E")) {
    pr.p_e = rational_vector(doc["p_E"], "/p_E");
    if (pr.p_e->size() != pr.e.size()) throw SchemaError("/p_E", "length must equal the length of E");
  }
  if (doc.contains("p")) {
    pr.p = rational_vector(doc["p"], "/p");
    if (pr.p->size() != n) throw SchemaError("/p", "length must equal the number of columns of A");
  }
  if (doc.contains("names")) {
    const json& jn = doc["names"];
    if (!jn.is_array() || jn.size() != n) throw SchemaError("/names", "expected one name per column");
    for (std::size_t i = 0; i < n; ++i) {
      if (!jn[i].is_string()) throw SchemaError("/names/" + std::to_string(i), "expected a string");
      pr.names.push_back(jn[i].get<std::string>());
    }
  }
  if (doc.contains("options")) {
    const json& jo = doc["options"];
    if (!jo.is_object()) throw SchemaError("/options", "expected an object");
    for (auto it = jo.begin(); it != jo.end(); ++it) {
      const std::string op = "/options/" + it.key();
      const json& v = it.value();
      if (it.key() == "seed" || it.key() == "count" || it.key() == "grid" || it.key() == "max_denominator") {
        if (!v.is_number_unsigned()) throw SchemaError(op, "expected a non-negative integer");
        const auto u = v.get<std::uint64_t>();
        if (it.key() == "seed") pr.sample.seed = u;
        if (it.key() == "count") pr.sample.count = u;
        if (it.key() == "grid") pr.grid = u;
        if (it.key() == "max_denominator") pr.max_denominator = static_cast<long>(u);
      } else if (it.key() == "tolerance") {
        if (!v.is_number()) throw SchemaError(op, "expected a number");
        pr.sample.tolerance = v.get<double>();
      } else {
        throw SchemaError(op, "unknown option");
      }
    }
  }
  return pr;
}

std::string one_based(const IndexSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + std::to_string(s[i] + 1);
  return out + "}";
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_point(const Completion& c) {
  if (c.exact) return format_vector(*c.exact);
  std::string s;
  for (std::size_t i = 0; i < c.point.size(); ++i) s += (i ? " " : "") + format_double(c.point[i]);
  return s;
}

const RatVector& require_pe(const Problem& pr) {
  if (!pr.p_e) throw PreconditionError("problem file has no p_E");
  return *pr.p_e;
}

ObservedSet observed(const Problem& pr) {
  if (pr.e.empty()) throw PreconditionError("problem file has no E");
  return ObservedSet(pr.a, pr.e);
}

RingPtr ring_of(const Problem& pr) { return model_ring(pr.a, pr.names); }

// ------------------------------------------------------------- commands

void cmd_ideal(const Problem& pr, bool as_json) {
  const auto ideal = toric_ideal(pr.a, ring_of(pr));
  if (as_json) {
    json out = json::array();
    for (const auto& g : ideal.generators()) out.push_back(to_string(g));
    std::cout << json{{"toric_ideal", out}}.dump(2) << "\n";
    return;
  }
  for (const auto& g : ideal.generators()) std::cout << to_string(g) << "\n";
}

void cmd_feasible(const Problem& pr, bool as_json) {
  if (pr.p) {
    const bool feasible = is_A_feasible(pr.a, *pr.p);
    const bool on_variety = variety_membership(pr.a, *pr.p);
    if (as_json) {
      std::cout << json{{"A_feasible", feasible}, {"in_X_A", on_variety}, {"in_image", feasible && on_variety}}.dump(2)
                << "\n";
    } else {
      std::cout << "A-feasible: " << (feasible ? "true" : "false") << "\n";
      std::cout << "in X_A: " << (on_variety ? "true" : "false") << "\n";
    }
    return;
  }
  const auto r = completable_to_toric(pr.a, observed(pr), require_pe(pr));
  if (as_json) {
    std::cout << json{{"toric_completable", r.completable},
                      {"witness", one_based(r.witness.indices)},
                      {"reason", r.reason}}
                     .dump(2)
              << "\n";
    return;
  }
  std::cout << "toric-completable: " << (r.completable ? "true" : "false") << "\n";
  std::cout << "witness: " << one_based(r.witness.indices) << "\n";
  if (!r.reason.empty()) std::cout << "reason: " << r.reason << "\n";
}

void cmd_facial_sets(const Problem& pr, bool as_json) {
  const auto faces = all_facial_sets(pr.a);
  json out = json::array();
  for (const auto& f : faces) {
    if (as_json) {
      std::vector<std::size_t> idx;
      for (auto i : f.indices) idx.push_back(i + 1);
      json normal = json::array();
      for (const auto& x : f.inner_normal) normal.push_back(format_rational(x));
      out.push_back(json{{"indices", idx}, {"inner_normal", normal}});
    } else {
      std::cout << one_based(f.indices) << "  normal (" << format_vector(f.inner_normal, ", ") << ")\n";
    }
  }
  if (as_json) std::cout << json{{"facial_sets", out}}.dump(2) << "\n";
}

void cmd_minimal_face(const Problem& pr, const std::vector<std::size_t>& set, bool as_json) {
  IndexSet s;
  for (auto k : set) {
    if (k < 1 || k > pr.a.cols()) throw PreconditionError("index " + std::to_string(k) + " out of range");
    s.push_back(k - 1);
  }
  if (set.empty()) s = pr.e;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  const auto f = minimal_facial_set(pr.a, s);
  if (as_json) {
    std::vector<std::size_t> idx;
    for (auto i : f.indices) idx.push_back(i + 1);
    std::cout << json{{"set", one_based(s)}, {"minimal_facial_set", idx}}.dump(2) << "\n";
    return;
  }
  std::cout << one_based(f.indices) << "\n";
}

void cmd_branch_vector(const Problem& pr, bool as_json) {
  const auto bv = branch_vector(pr.a, observed(pr));
  if (as_json) {
    json nu = json::array();
    for (const auto& x : bv.nu) nu.push_back(x.get_str());
    std::cout << json{{"nu", nu}, {"nonnegative", bv.nonnegative}}.dump(2) << "\n";
    return;
  }
  std::cout << "ν = (" << format_vector(bv.nu, ", ") << ")\n";
  if (bv.nonnegative) std::cout << "E lies in the proper facial set " << [&] {
      IndexSet z;
      for (std::size_t i = 0; i < bv.nu.size(); ++i)
        if (bv.nu[i] == 0) z.push_back(i);
      return one_based(z);
    }() << "\n";
}

CompletionOptions completion_options(const Problem& pr) {
  CompletionOptions opt;
  opt.max_denominator = pr.max_denominator;
  return opt;
}

void cmd_complete(const Problem& pr, bool as_json) {
  const auto r = enumerate_completions(pr.a, observed(pr), require_pe(pr), completion_options(pr));
  if (as_json) {
    json cs = json::array();
    for (const auto& c : r.completions) {
      json jc{{"point", format_point(c)}, {"certified", c.exact.has_value()}, {"nu_dot", c.nu_dot}};
      if (std::isfinite(c.t)) jc["t"] = c.t;
      cs.push_back(jc);
    }
    json out{{"classification", to_string(r.classification)}, {"completions", cs}};
    if (r.facet_case) {
      out["facet_mass"] = r.facet_mass_exact ? format_rational(*r.facet_mass_exact) : format_double(r.facet_mass);
    }
    if (!r.reason.empty()) out["reason"] = r.reason;
    std::cout << out.dump(2) << "\n";
    return;
  }
  std::cout << "classification: " << to_string(r.classification) << "\n";
  for (const auto& c : r.completions)
    std::cout << format_point(c) << (c.exact ? "" : "  (uncertified)") << "\n";
  if (r.facet_case)
    std::cout << "facet mass: "
              << (r.facet_mass_exact ? format_rational(*r.facet_mass_exact) : format_double(r.facet_mass)) << "\n";
  if (!r.reason.empty()) std::cout << "reason: " << r.reason << "\n";
}

void cmd_classify(const Problem& pr, bool as_json) {
  const auto lab = classify_observation(pr.a, observed(pr), require_pe(pr), completion_options(pr));
  if (as_json) {
    std::cout << json{{"region", to_string(lab.region)}, {"provenance", to_string(lab.provenance)}}.dump(2) << "\n";
    return;
  }
  std::cout << to_string(lab.region);
  if (lab.provenance != Provenance::kNone) std::cout << " (" << to_string(lab.provenance) << ")";
  std::cout << "\n";
}

json eliminant_json(const Eliminant& el) {
  json gens = json::array(), factors = json::array();
  for (const auto& g : el.ideal.generators()) gens.push_back(to_string(g));
  for (const auto& f : el.factors) factors.push_back(to_string(f));
  json out{{"generators", gens}, {"principal", el.principal}, {"factors", factors}};
  if (el.empty_locus) out["empty_locus"] = true;
  if (!el.note.empty()) out["note"] = el.note;
  return out;
}

void print_eliminant(const std::string& title, const Eliminant& el) {
  std::cout << title << ":\n";
  if (el.empty_locus) {
    std::cout << "  " << el.note << "\n";
    return;
  }
  for (const auto& g : el.ideal.generators()) std::cout << "  " << to_string(g) << "\n";
  if (!el.principal) std::cout << "  (not principal)\n";
  if (!el.monomial_radical.empty()) {
    std::cout << "  radical:";
    for (const auto& g : el.monomial_radical) std::cout << " " << to_string(g);
    std::cout << "\n";
  }
}

void cmd_boundary(const Problem& pr, bool as_json) {
  const auto rep = algebraic_boundary(pr.a, observed(pr), ring_of(pr), pr.sample);
  if (as_json) {
    json factors = json::array();
    for (const auto& f : rep.factors)
      factors.push_back(json{{"factor", to_string(f.factor)},
                             {"source", f.source},
                             {"verdict", to_string(f.validation.verdict)},
                             {"vanishing_fraction", f.validation.vanishing_fraction},
                             {"samples", f.validation.samples}});
    json radical = json::array();
    for (const auto& f : rep.radical_factors) radical.push_back(to_string(f));
    std::cout << json{{"branch", eliminant_json(rep.branch)},
                      {"model_boundary", eliminant_json(rep.model_boundary)},
                      {"radical_factors", radical},
                      {"radical_gap", rep.radical_gap},
                      {"factors", factors}}
                     .dump(2)
              << "\n";
    return;
  }
  print_eliminant("branch image eliminant", rep.branch);
  print_eliminant("model boundary eliminant", rep.model_boundary);
  if (rep.radical_gap) std::cout << "radical of the product not formed: an eliminant is not principal\n";
  std::cout << "factors:\n";
  for (const auto& f : rep.factors) {
    char frac[32];
    std::snprintf(frac, sizeof frac, "%.3f", f.validation.vanishing_fraction);
    std::cout << "  " << to_string(f.factor) << "  [" << f.source << ", " << to_string(f.validation.verdict)
              << ", " << frac << " of " << f.validation.samples << "]\n";
  }
}

void cmd_sample(const Problem& pr, bool branch, bool as_json) {
  std::vector<std::vector<double>> pts;
  std::string reason;
  if (branch) {
    auto bs = sample_branch_locus(pr.a, observed(pr), pr.sample);
    pts = std::move(bs.points);
    reason = bs.reason;
  } else {
    pts = sample_model(pr.a, pr.sample);
  }
  const auto names = ring_of(pr)->names();
  if (as_json) {
    json out = json::array();
    for (const auto& p : pts) out.push_back(p);
    json doc{{"names", names}, {"points", out}};
    if (!reason.empty()) doc["reason"] = reason;
    std::cout << doc.dump(2) << "\n";
    return;
  }
  if (!reason.empty()) std::cerr << reason << "\n";
  for (std::size_t i = 0; i < names.size(); ++i) std::cout << (i ? "," : "") << names[i];
  std::cout << "\n";
  for (const auto& p : pts) {
    for (std::size_t i = 0; i < p.size(); ++i) std::cout << (i ? "," : "") << format_double(p[i]);
    std::cout << "\n";
  }
}

struct Cell {
  Rational u, v;
  std::string cls;
  std::size_t count = 0;
};

std::string svg_of(const std::vector<Cell>& cells, std::size_t grid) {
  const int px = 4;
  const int size = static_cast<int>(grid) * px;
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
    << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
  s << "<rect width=\"" << size << "\" height=\"" << size << "\" fill=\"white\"/>\n";
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const auto& c = cells[k];
    const char* fill = nullptr;
    if (c.cls == "interior-two") fill = "#6a9fd8";
    if (c.cls == "interior-one") fill = "#9cc69b";
    if (c.cls == "boundary-branch" || c.cls == "boundary-facet") fill = "#c0392b";
    if (!fill) continue;
    const std::size_t i = k / grid, j = k % grid;
    // u to the right, v upward
    s << "<rect x=\"" << i * px << "\" y=\"" << (grid - 1 - j) * px << "\" width=\"" << px << "\" height=\"" << px
      << "\" fill=\"" << fill << "\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

void cmd_region_grid(const Problem& pr, std::size_t grid, const std::string& svg, unsigned threads) {
  const ObservedSet e = observed(pr);
  if (e.size() != 2) throw PreconditionError("region-grid needs exactly two observed coordinates");
  if (grid == 0) throw PreconditionError("grid resolution must be positive");
  const CompletionOptions opt = completion_options(pr);
  std::vector<Cell> cells(grid * grid);
  for (std::size_t i = 0; i < grid; ++i)
    for (std::size_t j = 0; j < grid; ++j) {
      Cell& c = cells[i * grid + j];
      c.u = Rational(static_cast<long>(2 * i + 1), static_cast<long>(2 * grid));
      c.v = Rational(static_cast<long>(2 * j + 1), static_cast<long>(2 * grid));
      c.u.canonicalize();
      c.v.canonicalize();
    }
  // Ideal-free work only; each cell is independent.
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t k = next++; k < cells.size(); k = next++) {
      try {
        const auto r = enumerate_completions(pr.a, e, {cells[k].u, cells[k].v}, opt);
        cells[k].cls = to_string(r.classification);
        cells[k].count = r.completions.size();
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  threads = std::max(1u, threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t + 1 < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::cout << "u,v,class,count\n";
  for (const auto& c : cells)
    std::cout << format_rational(c.u) << "," << format_rational(c.v) << "," << c.cls << "," << c.count << "\n";
  if (!svg.empty()) {
    std::ofstream out(svg);
    if (!out) throw PreconditionError("cannot write " + svg);
    out << svg_of(cells, grid);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toric models: ideals, facial sets, completions and completable regions"};
  app.require_subcommand(1);
  std::string path;
  bool as_json = false;
  std::optional<std::uint64_t> seed, count;

  auto add = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("problem", path, "problem file (JSON)")->required();
    sub->add_flag("--json", as_json, "JSON output");
    return sub;
  };
  add("ideal", "toric ideal I_A");
  add("feasible", "A-feasibility of p, or toric completability of p_E");
  add("facial-sets", "all facial sets with inner normals");
  std::vector<std::size_t> set;
  add("minimal-face", "minimal facial set containing a set (default E)")
      ->add_option("--set", set, "1-based indices")
      ->delimiter(',');
  add("branch-vector", "branch vector nu");
  add("complete", "completions of p_E");
  add("classify", "region label of p_E");
  auto* boundary = add("boundary", "algebraic boundary of the completable region");
  boundary->add_option("--seed", seed, "sampling seed");
  boundary->add_option("--count", count, "validation samples");
  bool branch = false;
  auto* sample = add("sample", "sample model or branch-locus points (CSV)");
  sample->add_option("--seed", seed, "seed");
  sample->add_option("--count", count, "number of points");
  sample->add_flag("--branch", branch, "sample the branch locus");
  std::size_t grid = 0;
  std::string svg;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  auto* region = add("region-grid", "classify the cell centres of a grid over (0,1)^2 (CSV)");
  region->add_option("--grid", grid, "cells per side (default from file, else 100)");
  region->add_option("--svg", svg, "also write an SVG rendering");
  region->add_option("--threads", threads, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    return app.exit(err) == 0 ? 0 : 1;
  }

  try {
    Problem pr = load_problem(path);
    if (seed) pr.sample.seed = *seed;
    if (count) pr.sample.count = *count;
    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "ideal") cmd_ideal(pr, as_json);
    else if (cmd == "feasible") cmd_feasible(pr, as_json);
    else if (cmd == "facial-sets") cmd_facial_sets(pr, as_json);
    else if (cmd == "minimal-face") cmd_minimal_face(pr, set, as_json);
    else if (cmd == "branch-vector") cmd_branch_vector(pr, as_json);
    else if (cmd == "complete") cmd_complete(pr, as_json);
    else if (cmd == "classify") cmd_classify(pr, as_json);
    else if (cmd == "boundary") cmd_boundary(pr, as_json);
    else if (cmd == "sample") cmd_sample(pr, branch, as_json);
    else if (cmd == "region-grid") cmd_region_grid(pr, grid ? grid : pr.grid, svg, threads);
  } catch (const SchemaError& err) {
    std::cerr << "schema error at " << err.what() << "\n";
    return 1;
  } catch (const CapacityError& err) {
    std::cerr << "capacity error: " << err.what() << "\n";
    return 3;
  } catch (const PreconditionError& err) {
    std::cerr << "precondition failed: " << err.what() << "\n";
    return 2;
  } catch (const DomainError& err) {
    std::cerr << "precondition failed: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
