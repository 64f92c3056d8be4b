// Acceptance gate: one PASS/FAIL line per criterion, exit code = failures.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "permdiff/bounds.hpp"
#include "permdiff/capacity.hpp"
#include "permdiff/constructions.hpp"
#include "permdiff/solver.hpp"
#include "permdiff/verify.hpp"
#include "support/property_suites.hpp"

using namespace permdiff;

namespace {

int failures = 0;

int worker_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp(hw, 1u, 4u));
}

void criterion(int id, const char* label, double limit_seconds,
               const std::function<bool(std::string&)>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail += std::string("exception: ") + e.what() + "\n";
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (ok && limit_seconds > 0 && secs > limit_seconds) {
    ok = false;
    detail += "time limit exceeded: " + std::to_string(secs) + "s > " +
              std::to_string(limit_seconds) + "s\n";
  }
  std::printf("%s criterion %d: %s (%.1fs)\n", ok ? "PASS" : "FAIL", id, label, secs);
  std::string line;
  for (char c : detail) {
    if (c == '\n') {
      if (!line.empty()) std::printf("  %s\n", line.c_str());
      line.clear();
    } else {
      line += c;
    }
  }
  if (!line.empty()) std::printf("  %s\n", line.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

const DistanceSet kNotOnes = DistanceSet::finite({1}).complement();

}  // namespace

int main() {
  const int workers = worker_count();

  criterion(1, "family counts match n!/2^floor(n/2) for n=1..10", 60, [](std::string& d) {
    for (int n = 1; n <= 10; ++n) {
      const PermFamily F = construct_theorem1(n);
      if (F.claimed_size() != formula_theorem1(static_cast<unsigned long>(n))) {
        d = "size mismatch at n=" + std::to_string(n);
        return false;
      }
    }
    if (construct_theorem1(10).claimed_size() != 113400) {
      d = "n=10 expected 113400";
      return false;
    }
    return true;
  });

  criterion(2, "families pairwise verified (exhaustive n<=8, sampled 9..10)", 60,
            [&](std::string& d) {
    for (int n = 1; n <= 8; ++n) {
      const PermFamily F = construct_theorem1(n);
      if (verify_family(F, kNotOnes, workers).status != VerifyStatus::AllPairsValid) {
        d = "exhaustive failure at n=" + std::to_string(n);
        return false;
      }
    }
    for (int n : {9, 10}) {
      const PermFamily F = construct_theorem1(n);
      const VerifyReport rep = verify_family_sampled(F, kNotOnes, {1'000'000, 2024});
      if (rep.status != VerifyStatus::SampledValid) {
        d = "sampled failure at n=" + std::to_string(n);
        return false;
      }
    }
    return true;
  });

  criterion(3, "exact clique numbers equal the closed forms", 900, [&](std::string& d) {
    SolveBudget budget;
    budget.workers = workers;
    struct Case {
      int n;
      DistanceSet D;
      BigInt want;
    };
    std::vector<Case> cases;
    const long thm1[] = {1, 1, 3, 6, 30};
    for (int n = 1; n <= 5; ++n)
      cases.push_back({n, kNotOnes, thm1[n - 1]});
    const DistanceSet odds = DistanceSet::residue(2, {0}).complement();
    for (int n = 1; n <= 5; ++n)
      cases.push_back({n, odds, formula_binomial_middle(static_cast<unsigned long>(n))});
    const DistanceSet notTwos = DistanceSet::finite({2}).complement();
    for (int n : {4, 5})
      cases.push_back({n, notTwos, formula_corollary(static_cast<unsigned long>(n), 2)});

    for (const Case& c : cases) {
      const auto t0 = std::chrono::steady_clock::now();
      const SolveResult r = max_clique(build_conflict_graph(c.n, c.D), budget);
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (!r.exact || r.clique_size != c.want || secs > 300.0) {
        d = "n=" + std::to_string(c.n) + " D=" + c.D.spec() + ": got " +
            std::to_string(r.clique_size) + " want " + c.want.get_str() +
            (r.exact ? "" : " (inexact)") + (secs > 300.0 ? " (over 300s)" : "");
        return false;
      }
    }
    return true;
  });

  criterion(4, "colliding-permutation values vs middle binomial (report only)", 0,
            [&](std::string& d) {
    SolveBudget budget;
    budget.workers = workers;
    const DistanceSet ones = DistanceSet::finite({1});
    bool all_exact = true;
    for (int n = 1; n <= 5; ++n) {
      const SolveResult r = max_clique(build_conflict_graph(n, ones), budget);
      const BigInt ref = formula_binomial_middle(static_cast<unsigned long>(n));
      all_exact = all_exact && r.exact;
      d += "n=" + std::to_string(n) + ": solver " + std::to_string(r.clique_size) +
           ", C(n,floor(n/2)) " + ref.get_str() + " -> " +
           (ref == r.clique_size ? "match" : "mismatch") +
           (r.exact ? "" : " [inexact]") + "\n";
    }
    return all_exact;
  });

  criterion(5, "modulus-q families: size formula + exhaustive verification", 120,
            [&](std::string& d) {
    for (auto [n, q] : {std::pair{4, 2}, {5, 2}, {6, 2}, {6, 3}}) {
      const PermFamily F = construct_corollary(n, q);
      if (F.claimed_size() !=
          formula_corollary(static_cast<unsigned long>(n), static_cast<unsigned long>(q))) {
        d = "size mismatch at n=" + std::to_string(n) + " q=" + std::to_string(q);
        return false;
      }
      const DistanceSet D = DistanceSet::finite({static_cast<long>(q)}).complement();
      if (verify_family(F, D, workers).status != VerifyStatus::AllPairsValid) {
        d = "verification failure at n=" + std::to_string(n) + " q=" + std::to_string(q);
        return false;
      }
    }
    return true;
  });

  criterion(6, "even-distance families: product size, verification, sandwich", 120,
            [&](std::string& d) {
    for (unsigned long n = 2; n <= 10; ++n) {
      const PermFamily F = construct_hookup(static_cast<int>(n));
      BigInt direct = factorial_big((n + 1) / 2 + 1) * factorial_big(n / 2);
      mpz_divexact_ui(direct.get_mpz_t(), direct.get_mpz_t(), 2);
      const BoundReport rep = hookup_bounds(n);
      if (F.claimed_size() != direct || rep.lower.value != direct) {
        d = "size/bound mismatch at n=" + std::to_string(n);
        return false;
      }
      if (rep.lower.value > rep.upper.value) {
        d = "sandwich inverted at n=" + std::to_string(n);
        return false;
      }
      if (verify_family(F, F.claimed_D(), workers).status != VerifyStatus::AllPairsValid) {
        d = "verification failure at n=" + std::to_string(n);
        return false;
      }
    }
    return true;
  });

  criterion(7, "valuation-set families: sizes, certificates, bound chain", 300,
            [&](std::string& d) {
    const DistanceSet E = DistanceSet::valuation(1, 2);

    const PermFamily F4 = construct_valuation(4, 1, 2);
    if (F4.size() != 4) {
      d = "n=4 expected 4 members";
      return false;
    }
    if (!verify_strong_certificate(F4, E)) {
      d = "n=4 strong certificate failed";
      return false;
    }
    if (certificate_upper_bound(F4, E.complement()) != 6) {
      d = "n=4 certificate bound expected 6";
      return false;
    }

    const PermFamily F16 = construct_valuation(16, 1, 2);
    if (F16.size() != 331776) {
      d = "n=16 expected 331776 members";
      return false;
    }

    // Structural proof of the strong certificate: values 0..15 are grouped by
    // bits 1 and 3 (the fixed bits for p/q = 1/2); each member must hold each
    // group in one 4-position block, the same block for every member, and the
    // blocks must range over all 4! orderings whose pairwise positionwise
    // differences stay inside {0} union E.
    auto group_of = [](int v0) { return ((v0 >> 1) & 1) | (((v0 >> 3) & 1) << 1); };
    std::array<std::set<int>, 4> group_values;
    for (int v = 0; v < 16; ++v) group_values[group_of(v)].insert(v);

    std::array<int, 4> block_group{};
    std::array<std::set<std::array<int, 4>>, 4> block_orderings;
    for (std::size_t m = 0; m < F16.size(); ++m) {
      const auto row = F16.member(m);
      for (int b = 0; b < 4; ++b) {
        std::array<int, 4> tuple{};
        std::set<int> seen;
        for (int i = 0; i < 4; ++i) {
          tuple[i] = row[b * 4 + i] - 1;
          seen.insert(tuple[i]);
        }
        const int z = group_of(tuple[0]);
        if (seen != group_values[z]) {
          d = "member " + std::to_string(m) + " block " + std::to_string(b) +
              " does not hold one whole group";
          return false;
        }
        if (m == 0) {
          block_group[b] = z;
        } else if (block_group[b] != z) {
          d = "block-to-group assignment varies across members";
          return false;
        }
        block_orderings[b].insert(tuple);
      }
    }
    {
      std::set<int> assigned(block_group.begin(), block_group.end());
      if (assigned.size() != 4) {
        d = "block-to-group assignment is not a bijection";
        return false;
      }
    }
    for (int b = 0; b < 4; ++b) {
      if (block_orderings[b].size() != 24) {
        d = "block " + std::to_string(b) + " carries " +
            std::to_string(block_orderings[b].size()) + " orderings, expected 24";
        return false;
      }
      const std::vector<std::array<int, 4>> rows(block_orderings[b].begin(),
                                                 block_orderings[b].end());
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = i + 1; j < rows.size(); ++j)
          for (int k = 0; k < 4; ++k) {
            const int diff = std::abs(rows[i][k] - rows[j][k]);
            if (diff != 0 && !E.contains(diff)) {
              d = "block ordering pair differs by " + std::to_string(diff) +
                  ", outside {0} union E";
              return false;
            }
          }
    }

    if (strong_certificate_violation_sampled(F16, E, {100'000, 2024}).has_value()) {
      d = "n=16 sampled cross-member pair violated the certificate";
      return false;
    }

    CertValidation sampled;
    sampled.mode = CertValidationMode::Sampled;
    sampled.sample_pairs = 100'000;
    sampled.seed = 2024;
    sampled.workers = workers;
    const BigInt cert = certificate_upper_bound(F16, E.complement(), sampled);
    if (cert != BigInt("63063000")) {
      d = "n=16 certificate bound expected 63063000, got " + cert.get_str();
      return false;
    }

    const ValuationBounds vb = valuation_bounds(16, 1, 2);
    const BigInt whole = factorial_big(16);
    if (!(vb.e.lower.value <= vb.e.upper.value)) {
      d = "lower exceeds upper for the valuation set";
      return false;
    }
    if (!(vb.complement.lower.value <= vb.complement.upper.value)) {
      d = "lower exceeds upper for the complement";
      return false;
    }
    if (!(vb.e.lower.value * vb.complement.lower.value <= whole)) {
      d = "product of lower bounds exceeds 16!";
      return false;
    }
    if (!(vb.e.upper.value * vb.complement.upper.value >= whole)) {
      d = "product of upper bounds below 16!";
      return false;
    }
    return true;
  });

  criterion(8, "pentagon quotient: typed profile, lift/project, full power", 300,
            [&](std::string& d) {
    const QuotientGraph c5 = QuotientGraph::cycle(5);
    const DistanceSet D = residue_distance_set(c5);
    SolveBudget budget;
    budget.workers = workers;

    const std::vector<int> ns = {1, 2, 3, 4, 5};
    const auto profile = capacity_profile(c5, ns, budget);
    for (const CapacityRow& row : profile) {
      d += "n=" + std::to_string(row.n) + ": omega " + std::to_string(row.omega) +
           ", rate " + std::to_string(row.rate) +
           (row.reference ? ", reference " + std::to_string(*row.reference) : "") + "\n";
      if (!row.exact) {
        d += "inexact at n=" + std::to_string(row.n) + "\n";
        return false;
      }
    }

    for (int n : ns) {
      const ConflictGraph g = build_typed_conflict_graph(c5, n);
      const SolveResult r = typed_max_clique(c5, n, budget);
      if (!r.exact) {
        d += "typed solve inexact at n=" + std::to_string(n) + "\n";
        return false;
      }
      std::vector<std::vector<int>> clique;
      for (std::size_t u : r.clique_witness) {
        const auto row = g.vertex(u);
        clique.emplace_back(row.begin(), row.end());
      }
      const PermFamily F = lift_to_permutations(clique, c5, n);
      if (verify_family(F, D, workers).status != VerifyStatus::AllPairsValid) {
        d += "lifted family failed verification at n=" + std::to_string(n) + "\n";
        return false;
      }
      auto back = project_to_residues(F, c5);
      std::sort(back.begin(), back.end());
      std::sort(clique.begin(), clique.end());
      if (back != clique) {
        d += "project(lift(...)) differs from the clique at n=" + std::to_string(n) + "\n";
        return false;
      }
    }

    const SolveResult full = max_clique(build_power_conflict_graph(c5, 2), budget);
    if (!full.exact || full.clique_size != 5) {
      d += "unrestricted square expected clique 5, got " +
           std::to_string(full.clique_size) + "\n";
      return false;
    }
    return true;
  });

  criterion(9, "module property suites all green", 600, [](std::string& d) {
    using permdiff::testing::PropertyResult;
    std::vector<std::pair<const char*, std::vector<PropertyResult>>> suites;
    suites.emplace_back("distance_set", permdiff::testing::run_distance_set_properties(17));
    suites.emplace_back("perm_core", permdiff::testing::run_perm_core_properties(23));
    suites.emplace_back("constructions", permdiff::testing::run_construction_properties(29));
    suites.emplace_back("solver", permdiff::testing::run_solver_properties(31));
    suites.emplace_back("bounds", permdiff::testing::run_bounds_properties(37));
    suites.emplace_back("capacity", permdiff::testing::run_capacity_properties(41));
    suites.emplace_back("cli", permdiff::testing::run_cli_properties(43));
    int bad = 0;
    for (const auto& [name, results] : suites) {
      for (const PropertyResult& r : results) {
        if (!r.passed) {
          ++bad;
          d += std::string(name) + "/" + r.name + ": " + r.detail + "\n";
        }
      }
    }
    if (bad > 0) d += std::to_string(bad) + " properties failed\n";
    return bad == 0;
  });

  std::printf("%d of 9 criteria failed\n", failures);
  return failures;
}
