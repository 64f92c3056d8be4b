#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "permdiff/bounds.hpp"
#include "permdiff/capacity.hpp"
#include "permdiff/common.hpp"
#include "permdiff/constructions.hpp"
#include "permdiff/distance_set.hpp"
#include "permdiff/family_io.hpp"
#include "permdiff/finite_graph.hpp"
#include "permdiff/perm.hpp"
#include "permdiff/solver.hpp"
#include "permdiff/verify.hpp"

namespace {

using permdiff::BigInt;
using permdiff::BoundReport;
using permdiff::DistanceSet;
using permdiff::PermFamily;
using json = nlohmann::ordered_json;

// exit codes: 0 ok, 2 validation, 3 budget exhausted, 4 property violation
constexpr int kOk = 0;
constexpr int kValidation = 2;
constexpr int kBudget = 3;
constexpr int kFinding = 4;

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void emit(const json& j, const std::string& out_path) {
  std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(out_path);
    if (!os) throw std::runtime_error("cannot open " + out_path);
    os << text;
  }
}

std::string bound_source_name(permdiff::BoundSource s) {
  switch (s) {
    case permdiff::BoundSource::ExhaustedSearch: return "exhausted-search";
    case permdiff::BoundSource::ColoringBound: return "coloring-bound";
    case permdiff::BoundSource::BudgetExpired: return "budget-expired";
  }
  return "?";
}

json report_json(const BoundReport& rep) {
  json j;
  j["n"] = rep.n;
  j["d"] = rep.d_spec;
  j["lower"] = {{"value", rep.lower.value.get_str()}, {"provenance", rep.lower.provenance}};
  j["upper"] = {{"value", rep.upper.value.get_str()}, {"provenance", rep.upper.provenance}};
  j["log2_lower"] = fixed6(rep.log2_lower);
  j["log2_upper"] = fixed6(rep.log2_upper);
  return j;
}

// Closed-form dispatcher: bound reports for the D shapes the formulas cover.
std::optional<BoundReport> closed_form_report(unsigned long n, const DistanceSet& D) {
  using permdiff::Bound;
  const std::string s = D.spec();

  auto exact = [&](BigInt v) {
    return permdiff::make_bound_report(n, s, Bound{v, "construction"}, Bound{v, "formula"});
  };
  auto parse_two = [](const std::string& body, const char* prefix, unsigned long& a,
                      unsigned long& b) {
    unsigned long x = 0, y = 0;
    char tail = 0;
    std::string fmt = std::string(prefix) + ":%lu:%lu%c";
    int got = std::sscanf(body.c_str(), fmt.c_str(), &x, &y, &tail);
    if (got != 2) return false;
    a = x;
    b = y;
    return true;
  };

  if (s.starts_with("complement(") && s.ends_with(")")) {
    const std::string inner = s.substr(11, s.size() - 12);
    unsigned long a = 0, b = 0;
    if (inner == "finite:1") return exact(permdiff::formula_theorem1(n));
    unsigned long q = 0;
    char tail = 0;
    if (std::sscanf(inner.c_str(), "finite:%lu%c", &q, &tail) == 1)
      return exact(permdiff::formula_corollary(n, q));
    if (inner == "residue:2:0") return exact(permdiff::formula_binomial_middle(n));
    if (inner == "residue:2:1") return permdiff::hookup_bounds(n);
    if (parse_two(inner, "valuation", a, b))
      return permdiff::valuation_bounds(n, a, b).complement;
    return std::nullopt;
  }

  unsigned long a = 0, b = 0;
  if (s == "finite:1") return permdiff::kms_reference_bounds(n);
  if (s == "residue:2:0") return permdiff::hookup_bounds(n);
  if (s == "residue:2:1") return exact(permdiff::formula_binomial_middle(n));
  if (parse_two(s, "valuation", a, b)) return permdiff::valuation_bounds(n, a, b).e;
  return std::nullopt;
}

struct ConstructArgs {
  int n = 0, q = 0, p = 0;
  bool thm1 = false, corollary = false, even_positions = false, hookup = false,
       valuation = false, residue_concat = false;
  bool count_only = false;
  std::size_t cap = permdiff::kDefaultMemberCap;
  std::string out, verify_mode = "auto";
  std::uint64_t sample_pairs = 100000, seed = 1;
  int workers = 1;
};

int run_construct(const ConstructArgs& a) {
  const int picked = a.thm1 + a.corollary + a.even_positions + a.hookup + a.valuation +
                     a.residue_concat;
  if (picked != 1) {
    std::cerr << "construct: pick exactly one of --thm1 --corollary --even-positions "
                 "--hookup --valuation --residue-concat\n";
    return kValidation;
  }
  const std::size_t cap = a.count_only ? 0 : a.cap;

  PermFamily F = [&] {
    if (a.thm1) return permdiff::construct_theorem1(a.n, cap);
    if (a.corollary) {
      if (a.q < 1) throw std::invalid_argument("construct --corollary needs --q >= 1");
      return permdiff::construct_corollary(a.n, a.q, cap);
    }
    if (a.even_positions) return permdiff::construct_even_positions(a.n, cap);
    if (a.hookup) return permdiff::construct_hookup(a.n, cap);
    if (a.valuation) {
      if (a.p < 1 || a.q < 1)
        throw std::invalid_argument("construct --valuation needs --p and --q");
      return permdiff::construct_valuation(a.n, a.p, a.q, cap);
    }
    if (a.q < 1) throw std::invalid_argument("construct --residue-concat needs --q >= 1");
    return permdiff::construct_residue_concat(a.n, a.q, cap);
  }();

  permdiff::SidecarInfo info;
  info.n = F.n();
  info.d_spec = F.claimed_D().spec();
  info.claimed_size = F.claimed_size();
  if (a.thm1) info.formula_size = permdiff::formula_theorem1(a.n);
  if (a.corollary) info.formula_size = permdiff::formula_corollary(a.n, a.q);
  if (a.even_positions) info.formula_size = permdiff::formula_binomial_middle(a.n);
  if (a.hookup) info.formula_size = permdiff::hookup_bounds(a.n).lower.value;
  if (a.valuation) info.formula_size = permdiff::valuation_bounds(a.n, a.p, a.q).e.lower.value;

  bool failed = false;
  if (!F.materialized() || a.verify_mode == "none") {
    info.verified = "none";
  } else {
    std::string mode = a.verify_mode;
    if (mode == "auto") {
      const std::size_t sz = F.size();
      mode = (sz * (sz - 1) / 2 <= 20'000'000) ? "exhaustive" : "sampled";
    }
    permdiff::VerifyReport rep =
        mode == "exhaustive"
            ? permdiff::verify_family(F, F.claimed_D(), a.workers)
            : permdiff::verify_family_sampled(F, F.claimed_D(), {a.sample_pairs, a.seed});
    failed = rep.status == permdiff::VerifyStatus::FailureWitness;
    info.verified = failed ? "none" : mode;
    if (failed) {
      std::cerr << "construct: verification failed on members " << rep.witness->first << ","
                << rep.witness->second << "\n";
    }
  }

  if (a.out.empty()) {
    permdiff::write_family(std::cout, F);
  } else {
    permdiff::write_family_file(a.out, F);
    permdiff::write_sidecar_file(a.out + ".json", info);
    std::cout << permdiff::sidecar_json(info);
  }
  return failed ? kFinding : kOk;
}

struct VerifyArgs {
  std::string in, d, mode = "exhaustive";
  bool certificate = false;
  std::uint64_t pairs = 100000, seed = 1;
  int workers = 1;
};

int run_verify(const VerifyArgs& a) {
  PermFamily F = permdiff::read_family_file(a.in);
  if (!F.materialized()) {
    std::cerr << "verify: " << a.in << " is counting-only; nothing to check\n";
    return kValidation;
  }
  const DistanceSet D = a.d.empty() ? F.claimed_D() : DistanceSet::parse(a.d);

  json j;
  j["n"] = F.n();
  j["d"] = D.spec();
  j["size"] = F.size();
  j["mode"] = a.mode;

  if (a.certificate) {
    const DistanceSet& allowed = D;  // diffs must stay inside {0} ∪ D
    j["check"] = "strong-certificate";
    auto v = a.mode == "exhaustive"
                 ? permdiff::strong_certificate_violation(F, allowed, a.workers)
                 : permdiff::strong_certificate_violation_sampled(F, allowed,
                                                                  {a.pairs, a.seed});
    if (v) {
      j["violation"] = {{"member_a", v->member_a}, {"member_b", v->member_b},
                        {"position", v->position}};
    } else {
      j["violation"] = nullptr;
    }
    emit(j, "");
    return v ? kFinding : kOk;
  }

  j["check"] = "pairwise";
  permdiff::VerifyReport rep = a.mode == "exhaustive"
                                   ? permdiff::verify_family(F, D, a.workers)
                                   : permdiff::verify_family_sampled(F, D, {a.pairs, a.seed});
  switch (rep.status) {
    case permdiff::VerifyStatus::AllPairsValid: j["status"] = "all-pairs-valid"; break;
    case permdiff::VerifyStatus::SampledValid: j["status"] = "sampled-valid"; break;
    case permdiff::VerifyStatus::FailureWitness: j["status"] = "failure-witness"; break;
  }
  j["pairs_checked"] = rep.pairs_checked;
  if (rep.witness) j["witness"] = {rep.witness->first, rep.witness->second};
  emit(j, "");
  return rep.status == permdiff::VerifyStatus::FailureWitness ? kFinding : kOk;
}

struct SolveArgs {
  int n = 0;
  std::string d, witness_out;
  double budget_secs = 300.0;
  std::uint64_t budget_nodes = 100'000'000;
  int workers = 1;
  std::size_t vertex_cap = permdiff::kDefaultVertexCap;
  bool independence = false;
};

int run_solve(const SolveArgs& a) {
  const DistanceSet D = DistanceSet::parse(a.d);
  permdiff::ConflictGraph g = permdiff::build_conflict_graph(a.n, D, a.vertex_cap, a.workers);
  permdiff::SolveBudget budget{a.budget_nodes, a.budget_secs, a.workers};
  permdiff::SolveResult res =
      a.independence ? permdiff::independence_number(g, budget) : permdiff::max_clique(g, budget);

  json j;
  j["n"] = a.n;
  j["d"] = D.spec();
  j["graph"] = g.label;
  j["num_vertices"] = g.num_vertices;
  j["problem"] = a.independence ? "independence" : "clique";
  j["value"] = res.clique_size;
  j["exact"] = res.exact;
  j["bound_source"] = bound_source_name(res.bound_source);
  j["proof_bound"] = res.proof_bound;
  j["nodes"] = res.nodes;
  if (!a.independence && D.spec() == "finite:1") {
    BigInt ref = permdiff::formula_binomial_middle(static_cast<unsigned long>(a.n));
    j["conjecture_ref"] = ref.get_str();
    if (res.exact) j["conjecture_match"] = (ref == res.clique_size);
  }
  emit(j, "");

  if (!a.witness_out.empty()) {
    // An independent set is pairwise complement(D)-different, a clique pairwise D-different.
    DistanceSet claim = a.independence ? D.complement() : D;
    PermFamily W = permdiff::witness_family(g, res.clique_witness, claim, "solver");
    permdiff::write_family_file(a.witness_out, W);
  }
  return res.exact ? kOk : kBudget;
}

int run_bounds(int n, const std::string& d, const std::string& format) {
  const DistanceSet D = DistanceSet::parse(d);
  auto rep = closed_form_report(static_cast<unsigned long>(n), D);
  if (!rep) {
    std::cerr << "bounds: no closed form for D=" << D.spec()
              << "; supported: finite:1, complement(finite:q), residue:2:0/1 and their "
                 "complements, valuation:p:q and its complement. Use `solve` for exact "
                 "small-n values.\n";
    return kValidation;
  }
  if (format == "csv") {
    std::cout << "n,d,lower,lower_provenance,upper,upper_provenance,log2_lower,log2_upper\n"
              << rep->n << "," << rep->d_spec << "," << rep->lower.value.get_str() << ","
              << rep->lower.provenance << "," << rep->upper.value.get_str() << ","
              << rep->upper.provenance << "," << fixed6(rep->log2_lower) << ","
              << fixed6(rep->log2_upper) << "\n";
  } else {
    emit(report_json(*rep), "");
  }
  return kOk;
}

int run_split(int n, const std::string& d) {
  const DistanceSet D = DistanceSet::parse(d);
  const DistanceSet Dbar = D.complement();
  auto rep_d = closed_form_report(static_cast<unsigned long>(n), D);
  auto rep_dbar = closed_form_report(static_cast<unsigned long>(n), Dbar);
  if (!rep_d || !rep_dbar) {
    std::cerr << "split: need closed-form bounds for both D=" << D.spec() << " and "
              << Dbar.spec() << "\n";
    return kValidation;
  }
  permdiff::SplitStrengthEstimate est =
      permdiff::split_strength(static_cast<unsigned long>(n), *rep_d, *rep_dbar);
  json j;
  j["n"] = est.n;
  j["d"] = est.d_spec;
  j["lo"] = fixed6(est.lo);
  j["hi"] = fixed6(est.hi);
  j["note"] = "finite-n estimate";
  if (D.spec() == "finite:1")
    j["reference_interval"] = {{"lo", "0.330000"}, {"hi", "0.500000"},
                               {"provenance", "literature"}};
  emit(j, "");
  return kOk;
}

struct CapacityArgs {
  std::string m, out, witness_prefix;
  std::vector<int> ns;
  double budget_secs = 300.0;
  std::uint64_t budget_nodes = 100'000'000;
  int workers = 1;
  std::size_t vertex_cap = permdiff::kDefaultVertexCap;
};

int run_capacity(const CapacityArgs& a) {
  const permdiff::QuotientGraph M = permdiff::QuotientGraph::parse(a.m);
  permdiff::SolveBudget budget{a.budget_nodes, a.budget_secs, a.workers};
  const bool pentagon = M.is_cycle(5);

  std::ostringstream csv;
  csv << "n,omega,rate,exact,reference\n";
  bool all_exact = true;
  for (int n : a.ns) {
    permdiff::ConflictGraph g =
        permdiff::build_typed_conflict_graph(M, n, a.vertex_cap, a.workers);
    permdiff::SolveResult res = permdiff::max_clique(g, budget);
    all_exact = all_exact && res.exact;
    csv << n << "," << res.clique_size << ","
        << fixed6(std::log2(static_cast<double>(res.clique_size)) / n) << ","
        << (res.exact ? "true" : "false") << ","
        << (pentagon ? fixed6(0.5 * std::log2(5.0)) : "") << "\n";
    if (!a.witness_prefix.empty()) {
      std::vector<std::vector<int>> seqs;
      seqs.reserve(res.clique_witness.size());
      for (std::size_t u : res.clique_witness) {
        auto row = g.vertex(u);
        seqs.emplace_back(row.begin(), row.end());
      }
      PermFamily lifted = permdiff::lift_to_permutations(seqs, M, n);
      permdiff::write_family_file(a.witness_prefix + "_n" + std::to_string(n) + ".family",
                                  lifted);
    }
  }
  if (a.out.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream os(a.out);
    if (!os) throw std::runtime_error("cannot open " + a.out);
    os << csv.str();
  }
  return all_exact ? kOk : kBudget;
}

int run_table() {
  std::ostream& os = std::cout;

  os << "== T(n, complement{1}) = n!/2^floor(n/2), constructed ==\n";
  os << "n,formula,constructed,match\n";
  for (int n = 1; n <= 10; ++n) {
    BigInt f = permdiff::formula_theorem1(static_cast<unsigned long>(n));
    PermFamily F = permdiff::construct_theorem1(n);
    os << n << "," << f.get_str() << "," << F.claimed_size().get_str() << ","
       << (f == F.claimed_size() ? "yes" : "NO") << "\n";
  }

  os << "\n== T(n, complement{q}) grid ==\n";
  os << "n\\q,1,2,3,4\n";
  for (int n = 2; n <= 9; ++n) {
    os << n;
    for (unsigned long q = 1; q <= 4; ++q)
      os << "," << permdiff::formula_corollary(static_cast<unsigned long>(n), q).get_str();
    os << "\n";
  }

  os << "\n== T(n, evens) sandwich ==\n";
  os << "n,lower,upper,constructed,match\n";
  for (unsigned long n = 2; n <= 10; ++n) {
    BoundReport rep = permdiff::hookup_bounds(n);
    PermFamily F = permdiff::construct_hookup(static_cast<int>(n));
    os << n << "," << rep.lower.value.get_str() << "," << rep.upper.value.get_str() << ","
       << F.claimed_size().get_str() << ","
       << (rep.lower.value == F.claimed_size() ? "yes" : "NO") << "\n";
  }

  os << "\n== T(n, valuation sets), p/q = 1/2 ==\n";
  os << "n,d,lower,upper\n";
  for (unsigned long n : {4ul, 16ul}) {
    permdiff::ValuationBounds vb = permdiff::valuation_bounds(n, 1, 2);
    for (const BoundReport* rep : {&vb.e, &vb.complement})
      os << n << "," << rep->d_spec << "," << rep->lower.value.get_str() << ","
         << rep->upper.value.get_str() << "\n";
  }

  os << "\n== split strength (finite-n estimates) ==\n";
  os << "n,d,lo,hi\n";
  for (unsigned long n : {4ul, 6ul, 8ul, 10ul}) {
    DistanceSet D = DistanceSet::parse("residue:2:0");
    auto rep_d = closed_form_report(n, D);
    auto rep_dbar = closed_form_report(n, D.complement());
    permdiff::SplitStrengthEstimate est = permdiff::split_strength(n, *rep_d, *rep_dbar);
    os << n << "," << est.d_spec << "," << fixed6(est.lo) << "," << fixed6(est.hi) << "\n";
  }
  os << "literature: split strength of {1} lies in (0.33, 0.50]\n";

  os << "\n== capacity profile, M = cycle:5 ==\n";
  os << "n,omega,rate,exact,reference\n";
  permdiff::QuotientGraph C5 = permdiff::QuotientGraph::cycle(5);
  std::vector<int> ns = {1, 2, 3, 4, 5};
  for (const permdiff::CapacityRow& row : permdiff::capacity_profile(C5, ns)) {
    os << row.n << "," << row.omega << "," << fixed6(row.rate) << ","
       << (row.exact ? "true" : "false") << ","
       << (row.reference ? fixed6(*row.reference) : "") << "\n";
  }
  permdiff::SolveResult full = permdiff::max_clique(permdiff::build_power_conflict_graph(C5, 2));
  os << "unrestricted pentagon square: omega = " << full.clique_size << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pairwise graph-different permutation families: construct, verify, solve, bound"};
  app.require_subcommand(1);

  ConstructArgs ca;
  CLI::App* construct = app.add_subcommand("construct", "build a family and its sidecar");
  construct->add_option("--n", ca.n, "permutation length")->required();
  construct->add_flag("--thm1", ca.thm1, "family for D = complement{1}");
  construct->add_flag("--corollary", ca.corollary, "family for D = complement{q}");
  construct->add_flag("--even-positions", ca.even_positions,
                      "family for D = odd differences");
  construct->add_flag("--hookup", ca.hookup, "family for D = even differences");
  construct->add_flag("--valuation", ca.valuation, "family for D = {m : ex(m) mod q < p}");
  construct->add_flag("--residue-concat", ca.residue_concat, "family for D = {q}");
  construct->add_option("--q", ca.q, "modulus / residue parameter");
  construct->add_option("--p", ca.p, "valuation threshold");
  construct->add_flag("--count-only", ca.count_only, "emit the count, skip materialization");
  construct->add_option("--cap", ca.cap, "materialization cap (members)");
  construct->add_option("--out", ca.out, "family file path (sidecar: <out>.json)");
  construct->add_option("--verify-mode", ca.verify_mode, "auto|exhaustive|sampled|none")
      ->check(CLI::IsMember({"auto", "exhaustive", "sampled", "none"}));
  construct->add_option("--sample-pairs", ca.sample_pairs, "pairs for sampled verification");
  construct->add_option("--seed", ca.seed, "sampling seed");
  construct->add_option("--workers", ca.workers, "verification threads");

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand("verify", "check a family file");
  verify->add_option("--in", va.in, "family file")->required();
  verify->add_option("--d", va.d, "distance set override (default: the file's claim)");
  verify->add_option("--mode", va.mode, "exhaustive|sampled")
      ->check(CLI::IsMember({"exhaustive", "sampled"}));
  verify->add_flag("--certificate", va.certificate,
                   "check the strong positionwise property instead: every pair "
                   "differs at every position by a value in {0} union D");
  verify->add_option("--k", va.pairs, "sampled pairs");
  verify->add_option("--seed", va.seed, "sampling seed");
  verify->add_option("--workers", va.workers, "threads");

  SolveArgs sa;
  CLI::App* solve = app.add_subcommand("solve", "exact max clique on the conflict graph");
  solve->add_option("--n", sa.n, "permutation length")->required();
  solve->add_option("--d", sa.d, "distance set spec")->required();
  solve->add_option("--budget-secs", sa.budget_secs, "wall-clock budget");
  solve->add_option("--budget-nodes", sa.budget_nodes, "search node budget");
  solve->add_option("--workers", sa.workers, "search threads");
  solve->add_option("--vertex-cap", sa.vertex_cap, "conflict graph vertex cap");
  solve->add_option("--witness-out", sa.witness_out, "write the witness family here");
  solve->add_flag("--independence", sa.independence, "independence number instead of clique");

  int bn = 0;
  std::string bd, bformat = "json";
  CLI::App* bounds = app.add_subcommand("bounds", "closed-form bound report for (n, D)");
  bounds->add_option("--n", bn, "permutation length")->required();
  bounds->add_option("--d", bd, "distance set spec")->required();
  bounds->add_option("--format", bformat, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));

  int pn = 0;
  std::string pd;
  CLI::App* split = app.add_subcommand("split", "split-strength interval for (n, D)");
  split->add_option("--n", pn, "permutation length")->required();
  split->add_option("--d", pd, "distance set spec")->required();

  CapacityArgs cpa;
  CLI::App* capacity = app.add_subcommand("capacity", "typed clique profile for a quotient");
  capacity->add_option("--m", cpa.m, "quotient graph spec, e.g. cycle:5")->required();
  capacity->add_option("--n", cpa.ns, "sequence lengths")->required();
  capacity->add_option("--budget-secs", cpa.budget_secs, "wall-clock budget per n");
  capacity->add_option("--budget-nodes", cpa.budget_nodes, "node budget per n");
  capacity->add_option("--workers", cpa.workers, "search threads");
  capacity->add_option("--vertex-cap", cpa.vertex_cap, "typed vertex cap");
  capacity->add_option("--out", cpa.out, "CSV path (default stdout)");
  capacity->add_option("--witness-out", cpa.witness_prefix,
                       "prefix for lifted witness family files");

  CLI::App* table = app.add_subcommand("table", "one-shot summary of all formulas");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kValidation;
  }

  try {
    if (construct->parsed()) return run_construct(ca);
    if (verify->parsed()) return run_verify(va);
    if (solve->parsed()) return run_solve(sa);
    if (bounds->parsed()) return run_bounds(bn, bd, bformat);
    if (split->parsed()) return run_split(pn, pd);
    if (capacity->parsed()) return run_capacity(cpa);
    if (table->parsed()) return run_table();
  } catch (const permdiff::cap_exceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << " (cap " << e.cap() << ")\n";
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  }
  return kValidation;
}
