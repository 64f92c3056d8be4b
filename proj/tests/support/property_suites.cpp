#include "property_suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

#include "generators.hpp"
#include "permdiff/bounds.hpp"
#include "permdiff/capacity.hpp"
#include "permdiff/constructions.hpp"
#include "permdiff/distance_set.hpp"
#include "permdiff/family_io.hpp"
#include "permdiff/finite_graph.hpp"
#include "permdiff/perm.hpp"
#include "permdiff/solver.hpp"
#include "permdiff/verify.hpp"

namespace permdiff::testing {

namespace {

void prop(std::vector<PropertyResult>& out, const std::string& name,
          const std::function<bool(std::string&)>& fn) {
  PropertyResult r{name, false, ""};
  try {
    r.passed = fn(r.detail);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  out.push_back(std::move(r));
}

PermFamily make_family(int n, const DistanceSet& D, const std::vector<Perm>& members) {
  PermFamily F(n, D, "test");
  for (const Perm& p : members) F.add(p);
  F.seal();
  return F;
}

ConflictGraph relabel(const ConflictGraph& g, const std::vector<std::size_t>& order) {
  ConflictGraph h;
  h.seq_len = g.seq_len;
  h.num_vertices = g.num_vertices;
  h.words = g.words;
  h.label = g.label + "|relabeled";
  h.verts.resize(g.verts.size());
  h.adj.assign(g.num_vertices * g.words, 0);
  for (std::size_t i = 0; i < g.num_vertices; ++i) {
    auto src = g.vertex(order[i]);
    std::copy(src.begin(), src.end(), h.verts.begin() + i * g.seq_len);
    for (std::size_t j = 0; j < g.num_vertices; ++j)
      if (g.adjacent(order[i], order[j]))
        h.adj[i * h.words + (j >> 6)] |= std::uint64_t{1} << (j & 63);
  }
  return h;
}

}  // namespace

int count_failures(const std::vector<PropertyResult>& results) {
  int failures = 0;
  for (const auto& r : results)
    if (!r.passed) ++failures;
  return failures;
}

std::vector<PropertyResult> run_distance_set_properties(std::uint64_t seed) {
  std::vector<PropertyResult> out;
  Rng rng(seed);

  prop(out, "complement-partitions-every-distance", [&](std::string& detail) {
    std::vector<DistanceSet> sets = {
        DistanceSet::finite({1}), DistanceSet::residue(2, {0}), DistanceSet::valuation(1, 2),
        DistanceSet::finite({1}).complement()};
    for (int i = 0; i < 4; ++i) sets.push_back(random_distance_set(rng));
    for (const DistanceSet& D : sets) {
      const DistanceSet C = D.complement();
      for (long d = 1; d <= 1'000'000; ++d) {
        if (D.contains(d) == C.contains(d)) {
          detail = "d=" + std::to_string(d) + " for D=" + D.spec();
          return false;
        }
      }
    }
    return true;
  });

  prop(out, "induced-graph-nesting", [&](std::string& detail) {
    for (int trial = 0; trial < 20; ++trial) {
      const DistanceSet D = random_distance_set(rng);
      const int n = rand_int(rng, 2, 30);
      const InducedGraph small = induced_graph(D, n);
      const InducedGraph big = induced_graph(D, n + 1);
      for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
          if (small.adjacent(a, b) != big.adjacent(a, b)) {
            detail = "D=" + D.spec() + " a=" + std::to_string(a) + " b=" + std::to_string(b);
            return false;
          }
    }
    return true;
  });

  prop(out, "valuation-membership-by-class", [&](std::string& detail) {
    for (long q = 2; q <= 4; ++q) {
      for (long p = 1; p < q; ++p) {
        const DistanceSet E = DistanceSet::valuation(p, q);
        for (int trial = 0; trial < 200; ++trial) {
          const long d = rand_int(rng, 1, 100000);
          const long cls = ex_valuation(d) % q;
          const long odd = 2 * rand_int(rng, 0, 499) + 1;
          const long k = rand_int(rng, 0, 2);
          const long d2 = odd << (cls + k * q);
          if (E.contains(d) != E.contains(d2)) {
            detail = E.spec() + ": d=" + std::to_string(d) + " d2=" + std::to_string(d2);
            return false;
          }
        }
      }
    }
    return true;
  });

  return out;
}

std::vector<PropertyResult> run_perm_core_properties(std::uint64_t seed) {
  std::vector<PropertyResult> out;
  Rng rng(seed);

  prop(out, "g-different-symmetric", [&](std::string& detail) {
    for (int trial = 0; trial < 300; ++trial) {
      const int n = rand_int(rng, 1, 10);
      const Perm x = random_permutation(rng, n);
      const Perm y = random_permutation(rng, n);
      const DistanceSet D = random_distance_set(rng);
      if (g_different(x, y, D) != g_different(y, x, D)) {
        detail = "D=" + D.spec();
        return false;
      }
    }
    return true;
  });

  prop(out, "strong-certificate-iff-no-complement-pair", [&](std::string& detail) {
    auto check = [&](const PermFamily& F, const DistanceSet& D) {
      const bool cert = verify_strong_certificate(F, D);
      const DistanceSet C = D.complement();
      bool any_pair = false;
      for (std::size_t i = 0; i < F.size() && !any_pair; ++i)
        for (std::size_t j = i + 1; j < F.size() && !any_pair; ++j)
          any_pair = g_different(F.member(i), F.member(j), C);
      return cert == !any_pair;
    };
    for (int trial = 0; trial < 60; ++trial) {
      const int n = rand_int(rng, 2, 6);
      const DistanceSet D = random_distance_set(rng);
      const PermFamily F = make_family(n, D, random_family(rng, n, rand_int(rng, 2, 8)));
      if (!check(F, D)) {
        detail = "random family, D=" + D.spec();
        return false;
      }
    }
    const CosetPartition part = coset_partition(4);
    for (const auto& block : part.classes) {
      if (!check(make_family(4, DistanceSet::finite({1}), block), DistanceSet::finite({1}))) {
        detail = "coset block";
        return false;
      }
    }
    return true;
  });

  prop(out, "cyclic-shift-orbit-count", [&](std::string& detail) {
    for (int n : {3, 5, 7}) {
      const PermFamily F = construct_theorem1(n);
      std::size_t first_entry_n = 0;
      for (std::size_t i = 0; i < F.size(); ++i) {
        if (F.member(i)[0] == n) ++first_entry_n;
        const Perm base = F.member_perm(i);
        for (int k = 0; k < n; ++k)
          if (!F.contains_member(cyclic_shift(base, k))) {
            detail = "n=" + std::to_string(n) + " not shift-closed";
            return false;
          }
      }
      if (first_entry_n * n != F.size()) {
        detail = "n=" + std::to_string(n) + ": " + std::to_string(first_entry_n) +
                 " orbit representatives for " + std::to_string(F.size()) + " members";
        return false;
      }
    }
    return true;
  });

  prop(out, "sigma-swap-disjoint-commute", [&](std::string& detail) {
    for (int trial = 0; trial < 200; ++trial) {
      const int n = rand_int(rng, 4, 9);
      const Perm x = random_permutation(rng, n);
      Perm vals = random_permutation(rng, n);  // first four entries: two disjoint pairs
      const int a = vals[0], b = vals[1], c = vals[2], d = vals[3];
      if (sigma_swap(sigma_swap(x, a, b), c, d) != sigma_swap(sigma_swap(x, c, d), a, b)) {
        detail = "n=" + std::to_string(n);
        return false;
      }
    }
    return true;
  });

  return out;
}

std::vector<PropertyResult> run_construction_properties(std::uint64_t seed) {
  std::vector<PropertyResult> out;
  Rng rng(seed);

  prop(out, "theorem1-size-matches-formula", [&](std::string& detail) {
    for (int n = 1; n <= 9; ++n) {
      const PermFamily F = construct_theorem1(n);
      if (F.claimed_size() != formula_theorem1(n) || F.size() != F.claimed_size()) {
        detail = "n=" + std::to_string(n) + " size=" + F.claimed_size().get_str();
        return false;
      }
    }
    return true;
  });

  prop(out, "theorem1-pairwise-verified", [&](std::string& detail) {
    const DistanceSet D = DistanceSet::finite({1}).complement();
    for (int n = 1; n <= 8; ++n) {
      if (verify_family(construct_theorem1(n), D).status != VerifyStatus::AllPairsValid) {
        detail = "n=" + std::to_string(n);
        return false;
      }
    }
    return true;
  });

  prop(out, "theorem1-odd-n-shift-structure", [&](std::string& detail) {
    for (int n : {3, 5, 7, 9}) {
      const PermFamily F = construct_theorem1(n);
      std::size_t reps = 0;
      for (std::size_t i = 0; i < F.size(); ++i) {
        if (F.member(i)[0] == n) ++reps;
        const Perm base = F.member_perm(i);
        for (int k = 1; k < n; ++k)
          if (!F.contains_member(cyclic_shift(base, k))) {
            detail = "n=" + std::to_string(n) + " member " + std::to_string(i) +
                     " shift " + std::to_string(k) + " missing";
            return false;
          }
      }
      if (reps * n != F.size()) {
        detail = "n=" + std::to_string(n) + " representative count " + std::to_string(reps);
        return false;
      }
    }
    return true;
  });

  prop(out, "coset-blocks-are-color-classes", [&](std::string& detail) {
    const DistanceSet ones = DistanceSet::finite({1});
    for (int n = 2; n <= 6; ++n) {
      const CosetPartition part = coset_partition(n);
      if (part.classes.size() != formula_theorem1(n)) {
        detail = "n=" + std::to_string(n) + ": " + std::to_string(part.classes.size()) +
                 " blocks";
        return false;
      }
      const std::size_t block_size = std::size_t{1} << (n / 2);
      std::set<std::uint64_t> seen;
      for (const auto& block : part.classes) {
        if (block.size() != block_size) {
          detail = "n=" + std::to_string(n) + " block size " + std::to_string(block.size());
          return false;
        }
        for (const Perm& p : block) seen.insert(lex_rank(p));
        if (!verify_strong_certificate(make_family(n, ones, block), ones)) {
          detail = "n=" + std::to_string(n) + " block not positionwise {0,1}";
          return false;
        }
      }
      if (seen.size() != part.classes.size() * block_size) {
        detail = "n=" + std::to_string(n) + " blocks overlap or miss permutations";
        return false;
      }
    }
    return true;
  });

  prop(out, "corollary-size-matches-formula", [&](std::string& detail) {
    for (int n = 1; n <= 8; ++n)
      for (int q = 1; q <= 4; ++q) {
        const PermFamily F = construct_corollary(n, q);
        if (F.claimed_size() != formula_corollary(n, q)) {
          detail = "n=" + std::to_string(n) + " q=" + std::to_string(q);
          return false;
        }
      }
    return true;
  });

  prop(out, "corollary-pairwise-verified-small", [&](std::string& detail) {
    for (int n = 1; n <= 8; ++n)
      for (int q = 1; q <= 4; ++q) {
        const PermFamily F = construct_corollary(n, q);
        if (!F.materialized() || F.size() > 5000) continue;
        if (verify_family(F, F.claimed_D()).status != VerifyStatus::AllPairsValid) {
          detail = "n=" + std::to_string(n) + " q=" + std::to_string(q);
          return false;
        }
      }
    return true;
  });

  prop(out, "valuation-strong-certificate", [&](std::string& detail) {
    const DistanceSet E = DistanceSet::valuation(1, 2);
    const PermFamily F4 = construct_valuation(4, 1, 2);
    if (!verify_strong_certificate(F4, E)) {
      detail = "n=4 violation";
      return false;
    }
    const PermFamily F16 = construct_valuation(16, 1, 2);
    if (auto v = strong_certificate_violation_sampled(F16, E, {100000, seed})) {
      detail = "n=16 members " + std::to_string(v->member_a) + "," +
               std::to_string(v->member_b) + " position " + std::to_string(v->position);
      return false;
    }
    return true;
  });

  prop(out, "hookup-pairwise-verified", [&](std::string& detail) {
    const DistanceSet evens = DistanceSet::residue(2, {0});
    for (int n = 2; n <= 10; ++n) {
      if (verify_family(construct_hookup(n), evens).status != VerifyStatus::AllPairsValid) {
        detail = "n=" + std::to_string(n);
        return false;
      }
    }
    return true;
  });

  return out;
}

std::vector<PropertyResult> run_solver_properties(std::uint64_t seed) {
  std::vector<PropertyResult> out;
  Rng rng(seed);

  prop(out, "witness-always-verifies", [&](std::string& detail) {
    const std::vector<std::pair<int, std::string>> cases = {
        {4, "complement(finite:1)"}, {4, "finite:1"}, {5, "residue:2:0"},
        {4, "complement(residue:2:0)"}};
    for (const auto& [n, spec] : cases) {
      const DistanceSet D = DistanceSet::parse(spec);
      const ConflictGraph g = build_conflict_graph(n, D);
      const SolveResult res = max_clique(g);
      const PermFamily W = witness_family(g, res.clique_witness, D, "solver");
      if (static_cast<int>(W.size()) != res.clique_size ||
          verify_family(W, D).status != VerifyStatus::AllPairsValid) {
        detail = "n=" + std::to_string(n) + " D=" + spec;
        return false;
      }
    }
    return true;
  });

  prop(out, "relabel-invariance", [&](std::string& detail) {
    auto shuffled_value = [&](const ConflictGraph& g) {
      std::vector<std::size_t> order(g.num_vertices);
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::shuffle(order.begin(), order.end(), rng);
      return max_clique(relabel(g, order)).clique_size;
    };
    const ConflictGraph h4 = build_conflict_graph(4, DistanceSet::finite({1}).complement());
    const int base = max_clique(h4).clique_size;
    for (int trial = 0; trial < 3; ++trial)
      if (shuffled_value(h4) != base) {
        detail = "H(4, complement{1}) trial " + std::to_string(trial);
        return false;
      }
    for (int trial = 0; trial < 4; ++trial) {
      const QuotientGraph M = random_quotient_graph(rng, 4);
      const ConflictGraph g = build_power_conflict_graph(M, 2);
      const int v = max_clique(g).clique_size;
      if (shuffled_value(g) != v) {
        detail = "power graph M=" + M.spec();
        return false;
      }
    }
    return true;
  });

  prop(out, "solver-matches-closed-forms", [&](std::string& detail) {
    for (int n = 1; n <= 5; ++n) {
      const SolveResult a =
          max_clique(build_conflict_graph(n, DistanceSet::parse("complement(finite:1)")));
      if (!a.exact || a.clique_size != formula_theorem1(n)) {
        detail = "complement{1} n=" + std::to_string(n);
        return false;
      }
      const SolveResult b =
          max_clique(build_conflict_graph(n, DistanceSet::parse("complement(residue:2:0)")));
      if (!b.exact || b.clique_size != formula_binomial_middle(n)) {
        detail = "odd-differences n=" + std::to_string(n);
        return false;
      }
    }
    for (int n : {4, 5}) {
      const SolveResult c =
          max_clique(build_conflict_graph(n, DistanceSet::parse("complement(finite:2)")));
      if (!c.exact || c.clique_size != formula_corollary(n, 2)) {
        detail = "complement{2} n=" + std::to_string(n);
        return false;
      }
    }
    return true;
  });

  prop(out, "single-distance-below-colliding", [&](std::string& detail) {
    for (int n = 2; n <= 5; ++n) {
      const SolveResult ones = max_clique(build_conflict_graph(n, DistanceSet::finite({1})));
      for (long q : {2, 3}) {
        const SolveResult qs = max_clique(build_conflict_graph(n, DistanceSet::finite({q})));
        if (!ones.exact || !qs.exact || qs.clique_size > ones.clique_size) {
          detail = "n=" + std::to_string(n) + " q=" + std::to_string(q);
          return false;
        }
      }
    }
    return true;
  });

  return out;
}

std::vector<PropertyResult> run_bounds_properties(std::uint64_t seed) {
  std::vector<PropertyResult> out;
  (void)seed;

  prop(out, "theorem1-formula-vs-construction", [&](std::string& detail) {
    for (int n = 1; n <= 9; ++n)
      if (formula_theorem1(n) != construct_theorem1(n).claimed_size()) {
        detail = "n=" + std::to_string(n);
        return false;
      }
    return true;
  });

  prop(out, "corollary-formula-vs-construction", [&](std::string& detail) {
    for (int n = 1; n <= 8; ++n)
      for (int q = 1; q <= 4; ++q)
        if (formula_corollary(n, q) != construct_corollary(n, q).claimed_size()) {
          detail = "n=" + std::to_string(n) + " q=" + std::to_string(q);
          return false;
        }
    return true;
  });

  prop(out, "hookup-lower-equals-product-form", [&](std::string& detail) {
    for (unsigned long n = 2; n <= 30; ++n) {
      BigInt direct = factorial_big((n + 1) / 2 + 1) * factorial_big(n / 2);
      mpz_divexact_ui(direct.get_mpz_t(), direct.get_mpz_t(), 2);
      if (hookup_bounds(n).lower.value != direct) {
        detail = "n=" + std::to_string(n);
        return false;
      }
    }
    return true;
  });

  prop(out, "valuation-sandwich-admissible-grid", [&](std::string& detail) {
    for (const auto& [p, q] : std::vector<std::pair<unsigned long, unsigned long>>{
             {1, 2}, {1, 3}, {2, 3}}) {
      for (unsigned long e = q; e <= 20; e += q) {
        const unsigned long n = 1ul << e;
        const ValuationBounds vb = valuation_bounds(n, p, q);
        if (vb.e.lower.value > vb.e.upper.value ||
            vb.complement.lower.value > vb.complement.upper.value) {
          detail = "n=2^" + std::to_string(e) + " p/q=" + std::to_string(p) + "/" +
                   std::to_string(q) + ": lower exceeds upper";
          return false;
        }
        if (vb.e.lower.value * vb.complement.lower.value > factorial_big(n)) {
          detail = "n=2^" + std::to_string(e) + ": product of lower bounds exceeds n!";
          return false;
        }
      }
    }
    return true;
  });

  prop(out, "certificate-bound-vs-complement-lower", [&](std::string& detail) {
    const DistanceSet Dbar = DistanceSet::valuation(1, 2).complement();
    {
      const BigInt cert = certificate_upper_bound(construct_valuation(4, 1, 2), Dbar);
      if (cert < valuation_bounds(4, 1, 2).complement.lower.value) {
        detail = "n=4";
        return false;
      }
    }
    {
      CertValidation validation;
      validation.mode = CertValidationMode::Sampled;
      const BigInt cert = certificate_upper_bound(construct_valuation(16, 1, 2), Dbar,
                                                  validation);
      if (cert < valuation_bounds(16, 1, 2).complement.lower.value) {
        detail = "n=16";
        return false;
      }
    }
    return true;
  });

  prop(out, "log-ratio-tracks-exponent", [&](std::string& detail) {
    const unsigned long n = 1ul << 12;
    const ValuationBounds vb = valuation_bounds(n, 1, 2);
    const double ratio = log2_big(vb.e.lower.value) / log2_big(factorial_big(n));
    std::ostringstream os;
    os << "n=4096 alpha=0.5 ratio=" << ratio;
    detail = os.str();
    return std::abs(ratio - 0.5) <= 0.05;
  });

  return out;
}

std::vector<PropertyResult> run_capacity_properties(std::uint64_t seed) {
  std::vector<PropertyResult> out;
  Rng rng(seed);

  prop(out, "lift-then-project-is-identity", [&](std::string& detail) {
    for (int trial = 0; trial < 8; ++trial) {
      const QuotientGraph M = random_quotient_graph(rng, 5);
      const int n = rand_int(rng, M.r, 8);
      auto typed = typed_vertex_set(M, n);
      const PermFamily lifted = lift_to_permutations(typed, M, n);
      auto back = project_to_residues(lifted, M);
      std::sort(typed.begin(), typed.end());
      std::sort(back.begin(), back.end());
      if (typed != back) {
        detail = "M=" + M.spec() + " n=" + std::to_string(n);
        return false;
      }
    }
    return true;
  });

  prop(out, "lifted-clique-verifies", [&](std::string& detail) {
    // difference-closed quotients: check through the realized distance set
    for (const QuotientGraph& M : {QuotientGraph::cycle(5), QuotientGraph::complete(3)}) {
      const int n = M.r + 1;
      const ConflictGraph g = build_typed_conflict_graph(M, n);
      const SolveResult res = max_clique(g);
      std::vector<std::vector<int>> seqs;
      for (std::size_t u : res.clique_witness) {
        auto row = g.vertex(u);
        seqs.emplace_back(row.begin(), row.end());
      }
      const PermFamily lifted = lift_to_permutations(seqs, M, n);
      if (verify_family(lifted, residue_distance_set(M)).status !=
          VerifyStatus::AllPairsValid) {
        detail = "M=" + M.spec();
        return false;
      }
    }
    // general quotients: check the quotient adjacency directly
    for (int trial = 0; trial < 5; ++trial) {
      const QuotientGraph M = random_quotient_graph(rng, 4);
      const int n = rand_int(rng, M.r, 6);
      const ConflictGraph g = build_typed_conflict_graph(M, n);
      const SolveResult res = max_clique(g);
      std::vector<std::vector<int>> seqs;
      for (std::size_t u : res.clique_witness) {
        auto row = g.vertex(u);
        seqs.emplace_back(row.begin(), row.end());
      }
      const PermFamily lifted = lift_to_permutations(seqs, M, n);
      const auto projected = project_to_residues(lifted, M);
      for (std::size_t i = 0; i < projected.size(); ++i)
        for (std::size_t j = i + 1; j < projected.size(); ++j)
          if (!is_m_different(projected[i], projected[j], M)) {
            detail = "M=" + M.spec() + " members " + std::to_string(i) + "," +
                     std::to_string(j);
            return false;
          }
    }
    return true;
  });

  prop(out, "projected-family-is-typed-clique", [&](std::string& detail) {
    const QuotientGraph K2 = QuotientGraph::single_edge();
    for (int n = 2; n <= 8; ++n) {
      const PermFamily F = construct_even_positions(n);
      const auto seqs = project_to_residues(F, K2);
      const TypeVector q = residue_type(2, n);
      std::set<std::vector<int>> distinct(seqs.begin(), seqs.end());
      if (distinct.size() != seqs.size()) {
        detail = "n=" + std::to_string(n) + " projections collide";
        return false;
      }
      for (const auto& s : seqs)
        if (type_of(s, 2) != q) {
          detail = "n=" + std::to_string(n) + " wrong type";
          return false;
        }
      for (std::size_t i = 0; i < seqs.size(); ++i)
        for (std::size_t j = i + 1; j < seqs.size(); ++j)
          if (!is_m_different(seqs[i], seqs[j], K2)) {
            detail = "n=" + std::to_string(n) + " members " + std::to_string(i) + "," +
                     std::to_string(j) + " not edge-different";
            return false;
          }
    }
    return true;
  });

  prop(out, "conormal-product-clique-multiplies", [&](std::string& detail) {
    const QuotientGraph K2 = QuotientGraph::complete(2);
    const QuotientGraph K3 = QuotientGraph::complete(3);
    const QuotientGraph K4 = QuotientGraph::complete(4);
    const QuotientGraph P3 = QuotientGraph::from_edges(3, {{0, 1}, {1, 2}});
    const QuotientGraph C4 = QuotientGraph::cycle(4);
    const std::vector<std::vector<QuotientGraph>> combos = {
        {K2, K3},     {K3, K3},     {K4, K2},         {P3, K3},
        {C4, P3},     {C4, C4},     {K2, K2, K3},     {C4, K2, K2},
        {P3, P3, K2}, {K3, K3, K3},
    };
    for (const auto& factors : combos) {
      int expected = 1;
      for (const QuotientGraph& f : factors) expected *= exact_clique_number(f);
      const QuotientGraph product = co_normal_product(factors);
      if (exact_clique_number(product) != expected) {
        std::string names;
        for (const QuotientGraph& f : factors) names += f.spec() + " ";
        detail = names + "-> expected " + std::to_string(expected);
        return false;
      }
    }
    return true;
  });

  prop(out, "typed-rate-below-chromatic-log", [&](std::string& detail) {
    auto check_rows = [&](const QuotientGraph& M, const std::vector<int>& ns,
                          std::string& why) {
      const double cap = std::log2(static_cast<double>(exact_chromatic_number(M)));
      for (const CapacityRow& row : capacity_profile(M, ns)) {
        if (row.rate > cap + 1e-9) {
          why = "M=" + M.spec() + " n=" + std::to_string(row.n) + " rate " +
                std::to_string(row.rate) + " > log2 chi " + std::to_string(cap);
          return false;
        }
      }
      return true;
    };
    if (!check_rows(QuotientGraph::cycle(5), {1, 2, 3, 4, 5}, detail)) return false;
    for (int trial = 0; trial < 4; ++trial) {
      const QuotientGraph M = random_quotient_graph(rng, 4);
      if (!check_rows(M, {M.r, M.r + 1}, detail)) return false;
    }
    return true;
  });

  return out;
}

std::vector<PropertyResult> run_cli_properties(std::uint64_t seed) {
  std::vector<PropertyResult> out;
  (void)seed;

  prop(out, "family-file-round-trip-reproduces-verification", [&](std::string& detail) {
    const PermFamily F = construct_theorem1(5);
    std::ostringstream os;
    write_family(os, F);
    std::istringstream is(os.str());
    const PermFamily back = read_family(is);
    if (!(back == F) || back.claimed_D().spec() != F.claimed_D().spec()) {
      detail = "round-trip altered the family";
      return false;
    }
    SidecarInfo info;
    info.n = F.n();
    info.d_spec = F.claimed_D().spec();
    info.claimed_size = F.claimed_size();
    info.verified =
        verify_family(F, F.claimed_D()).status == VerifyStatus::AllPairsValid ? "exhaustive"
                                                                              : "none";
    const SidecarInfo parsed = read_sidecar(sidecar_json(info));
    const bool re_verified =
        verify_family(back, back.claimed_D()).status == VerifyStatus::AllPairsValid;
    if ((parsed.verified == "exhaustive") != re_verified) {
      detail = "sidecar flag " + parsed.verified + " but re-verification says " +
               (re_verified ? "valid" : "invalid");
      return false;
    }
    return true;
  });

  prop(out, "serialization-is-deterministic", [&](std::string& detail) {
    const PermFamily a = construct_theorem1(6);
    const PermFamily b = construct_theorem1(6);
    if (!(a == b)) {
      detail = "two constructions differ";
      return false;
    }
    std::ostringstream s1, s2;
    write_family(s1, a);
    write_family(s2, b);
    if (s1.str() != s2.str()) {
      detail = "family text differs between runs";
      return false;
    }
    SidecarInfo info;
    info.n = a.n();
    info.d_spec = a.claimed_D().spec();
    info.claimed_size = a.claimed_size();
    info.formula_size = formula_theorem1(6);
    info.verified = "exhaustive";
    if (sidecar_json(info) != sidecar_json(info)) {
      detail = "sidecar text differs between calls";
      return false;
    }
    return true;
  });

  prop(out, "counts-exact-rates-six-digits", [&](std::string& detail) {
    SidecarInfo info;
    info.n = 20;
    info.d_spec = "complement(finite:1)";
    info.claimed_size = formula_theorem1(20);
    info.verified = "none";
    const std::string text = sidecar_json(info);
    if (text.find("\"" + formula_theorem1(20).get_str() + "\"") == std::string::npos) {
      detail = "large count not serialized as exact integer string";
      return false;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", 0.5);
    if (std::string(buf) != "0.500000") {
      detail = "rate formatting drifted";
      return false;
    }
    return true;
  });

  return out;
}

}  // namespace permdiff::testing
