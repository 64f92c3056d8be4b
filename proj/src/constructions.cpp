#include "permdiff/constructions.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <stdexcept>

#include "permdiff/bounds.hpp"
#include "permdiff/common.hpp"
#include "permdiff/solver.hpp"

namespace permdiff {

namespace {

struct FlatPerms {
  int n = 0;
  std::vector<std::int32_t> rows;
  std::size_t count() const { return n ? rows.size() / n : 0; }
  const std::int32_t* row(std::size_t i) const { return rows.data() + i * n; }
};

FlatPerms build_A(int n, const FlatPerms& B_prev);

FlatPerms build_B(int n) {  // n odd
  if (n == 1) return {1, {1}};
  FlatPerms prev = build_B(n - 2);
  FlatPerms A = build_A(n, prev);
  FlatPerms B{n, {}};
  B.rows.reserve(A.rows.size() * n);
  std::vector<std::int32_t> s(n);
  for (std::size_t t = 0; t < A.count(); ++t) {
    const std::int32_t* a = A.row(t);
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) s[(i + k) % n] = a[i];
      B.rows.insert(B.rows.end(), s.begin(), s.end());
    }
  }
  return B;
}

// A_n = union over j of psi_insert(B_{n-2}, j) kept when value n-2 sits
// before position j.
FlatPerms build_A(int n, const FlatPerms& B_prev) {
  FlatPerms A{n, {}};
  std::vector<std::int32_t> r(n);
  for (std::size_t t = 0; t < B_prev.count(); ++t) {
    const std::int32_t* pi = B_prev.row(t);
    for (int j = 2; j <= n; ++j) {
      r[0] = n;
      for (int i = 2; i < j; ++i) r[i - 1] = pi[i - 2];
      r[j - 1] = n - 1;
      for (int i = j + 1; i <= n; ++i) r[i - 1] = pi[i - 3];
      int pos = 0;
      for (int i = 0; i < n; ++i)
        if (r[i] == n - 2) {
          pos = i + 1;
          break;
        }
      if (pos < j) A.rows.insert(A.rows.end(), r.begin(), r.end());
    }
  }
  return A;
}

void add_flat(PermFamily& F, const FlatPerms& P, int drop_first = 0) {
  std::vector<int> buf(P.n - drop_first);
  for (std::size_t t = 0; t < P.count(); ++t) {
    const std::int32_t* row = P.row(t);
    for (int i = drop_first; i < P.n; ++i) buf[i - drop_first] = row[i];
    F.add(buf);
  }
}

}  // namespace

PermFamily construct_theorem1(int n, std::size_t member_cap) {
  if (n < 1) throw std::invalid_argument("construct_theorem1: n must be >= 1");
  DistanceSet D = DistanceSet::finite({1}).complement();
  mpz_class target = formula_theorem1(static_cast<unsigned long>(n));
  if (target > static_cast<unsigned long>(member_cap))
    return PermFamily::counted(n, D, "theorem1", target);
  PermFamily F(n, D, "theorem1");
  if (n % 2 == 1) {
    add_flat(F, build_B(n));
  } else if (n == 2) {
    FlatPerms A = build_A(3, build_B(1));
    add_flat(F, A, 1);
  } else {
    FlatPerms A = build_A(n + 1, build_B(n - 1));
    add_flat(F, A, 1);
  }
  F.seal();
  if (F.claimed_size() != target)
    throw std::logic_error("construct_theorem1: size does not match formula");
  return F;
}

CosetPartition coset_partition(int n, std::size_t perm_cap) {
  if (n < 1) throw std::invalid_argument("coset_partition: n must be >= 1");
  mpz_class total = factorial_big(static_cast<unsigned long>(n));
  if (total > static_cast<unsigned long>(perm_cap))
    throw cap_exceeded("coset_partition: n! = " + total.get_str() +
                           " exceeds materialization cap of " + std::to_string(perm_cap),
                       perm_cap);
  const std::size_t nf = total.get_ui();
  const int g = n / 2;  // swaps (1 2),(3 4),...,(2g-1 2g)
  std::vector<char> visited(nf, 0);
  CosetPartition part;
  part.n = n;
  Perm p(n);
  std::iota(p.begin(), p.end(), 1);
  do {
    std::uint64_t rank = lex_rank(p);
    if (visited[rank]) continue;
    std::vector<Perm> block;
    block.reserve(std::size_t{1} << g);
    for (std::uint32_t mask = 0; mask < (1u << g); ++mask) {
      Perm m = p;
      for (int i = 0; i < g; ++i)
        if (mask & (1u << i)) {
          int a = 2 * i + 1, b = 2 * i + 2;
          std::swap(m[position_of(m, a) - 1], m[position_of(m, b) - 1]);
        }
      visited[lex_rank(m)] = 1;
      block.push_back(std::move(m));
    }
    std::sort(block.begin(), block.end());
    part.classes.push_back(std::move(block));
  } while (std::next_permutation(p.begin(), p.end()));
  return part;
}

PermFamily construct_corollary(int n, int q, std::size_t member_cap) {
  if (n < 1 || q < 1) throw std::invalid_argument("construct_corollary: need n, q >= 1");
  DistanceSet D = DistanceSet::finite({q}).complement();
  mpz_class S = formula_corollary(static_cast<unsigned long>(n), static_cast<unsigned long>(q));
  if (S > static_cast<unsigned long>(member_cap))
    return PermFamily::counted(n, D, "corollary", S);

  // values of [n] per residue class, ascending
  std::vector<std::vector<int>> cls(q);
  for (int v = 1; v <= n; ++v) cls[v % q].push_back(v);

  std::map<int, PermFamily> base;  // class size -> theorem-1 family
  for (int k = 0; k < q; ++k) {
    int s = static_cast<int>(cls[k].size());
    if (s > 0 && !base.count(s)) base.emplace(s, construct_theorem1(s, member_cap));
  }

  PermFamily F(n, D, "corollary");
  // residue pattern = which class each position's value belongs to
  std::vector<int> pattern;
  for (int k = 0; k < q; ++k)
    pattern.insert(pattern.end(), cls[k].size(), k);
  std::sort(pattern.begin(), pattern.end());

  std::vector<int> member(n);
  do {
    std::vector<std::vector<int>> pos(q);  // positions per class, ascending
    for (int i = 0; i < n; ++i) pos[pattern[i]].push_back(i);
    // odometer over per-class family members
    std::vector<int> active;
    for (int k = 0; k < q; ++k)
      if (!cls[k].empty()) active.push_back(k);
    std::vector<std::size_t> idx(active.size(), 0);
    while (true) {
      for (std::size_t a = 0; a < active.size(); ++a) {
        int k = active[a];
        const PermFamily& bf = base.at(static_cast<int>(cls[k].size()));
        auto bm = bf.member(idx[a]);
        for (std::size_t i = 0; i < pos[k].size(); ++i)
          member[pos[k][i]] = cls[k][bm[i] - 1];
      }
      F.add(member);
      std::size_t a = 0;
      for (; a < active.size(); ++a) {
        const PermFamily& bf = base.at(static_cast<int>(cls[active[a]].size()));
        if (++idx[a] < bf.size()) break;
        idx[a] = 0;
      }
      if (a == active.size()) break;
    }
  } while (std::next_permutation(pattern.begin(), pattern.end()));

  F.seal();
  if (F.claimed_size() != S)
    throw std::logic_error("construct_corollary: size does not match formula");
  return F;
}

PermFamily construct_even_positions(int n, std::size_t member_cap) {
  if (n < 1) throw std::invalid_argument("construct_even_positions: n must be >= 1");
  DistanceSet D = DistanceSet::residue(2, {0}).complement();
  mpz_class S = formula_binomial_middle(static_cast<unsigned long>(n));
  if (S > static_cast<unsigned long>(member_cap))
    return PermFamily::counted(n, D, "even_positions", S);
  const int ne = n / 2;
  std::vector<int> evens, odds;
  for (int v = 2; v <= n; v += 2) evens.push_back(v);
  for (int v = 1; v <= n; v += 2) odds.push_back(v);
  PermFamily F(n, D, "even_positions");
  std::vector<char> mask(n, 0);
  std::fill(mask.begin(), mask.begin() + ne, 1);
  std::sort(mask.begin(), mask.end());
  std::vector<int> member(n);
  do {
    int ei = 0, oi = 0;
    for (int i = 0; i < n; ++i) member[i] = mask[i] ? evens[ei++] : odds[oi++];
    F.add(member);
  } while (std::next_permutation(mask.begin(), mask.end()));
  F.seal();
  if (F.claimed_size() != S)
    throw std::logic_error("construct_even_positions: size does not match formula");
  return F;
}

PermFamily construct_hookup(int n, std::size_t member_cap) {
  if (n < 2) throw std::invalid_argument("construct_hookup: n must be >= 2");
  DistanceSet D = DistanceSet::residue(2, {0});
  const int c = (n + 1) / 2;  // odd count; placeholder makes c+1 head symbols
  const int ne = n / 2;
  mpz_class S = factorial_big(c + 1) / 2 * factorial_big(ne);
  if (S > static_cast<unsigned long>(member_cap))
    return PermFamily::counted(n, D, "hookup", S);

  std::vector<int> odds, evens;
  for (int v = 1; v <= n; v += 2) odds.push_back(v);
  for (int v = 2; v <= n; v += 2) evens.push_back(v);

  // heads: even permutations of odds + kStar (kStar ranks last)
  std::vector<std::vector<int>> heads;
  std::vector<int> head = odds;
  head.push_back(kStar);
  std::sort(head.begin(), head.end());
  do {
    if (is_even_permutation(head)) heads.push_back(head);
  } while (std::next_permutation(head.begin(), head.end()));

  PermFamily F(n, D, "hookup");
  std::vector<int> member(n);
  std::vector<int> tail = evens;
  std::sort(tail.begin(), tail.end());
  do {
    for (const auto& h : heads) {
      for (int i = 0; i <= c; ++i) member[i] = (h[i] == kStar) ? tail[0] : h[i];
      for (int i = 1; i < ne; ++i) member[c + 1 + (i - 1)] = tail[i];
      F.add(member);
    }
  } while (std::next_permutation(tail.begin(), tail.end()));

  F.seal();
  if (F.claimed_size() != S)
    throw std::logic_error("construct_hookup: size does not match formula");
  return F;
}

PermFamily construct_valuation(int n, int p, int q, std::size_t member_cap) {
  if (p < 1 || q <= p)
    throw std::invalid_argument("construct_valuation: need 1 <= p < q");
  if (n < 2 || (n & (n - 1)) != 0)
    throw std::invalid_argument(
        "construct_valuation: n must be 2^(q*t') for an integer t' >= 1");
  const int t = std::countr_zero(static_cast<unsigned>(n));
  if (t % q != 0 || t / q < 1)
    throw std::invalid_argument(
        "construct_valuation: n must be 2^(q*t') for an integer t' >= 1");

  DistanceSet D = DistanceSet::valuation(p, q);
  // free bit positions (0-based index ≡ 0..p-1 mod q) vary within a group;
  // the remaining fixed bits, packed ascending, name the group
  std::vector<int> fixed_bits;
  int free_count = 0;
  for (int b = 0; b < t; ++b) {
    if (b % q < p)
      ++free_count;
    else
      fixed_bits.push_back(b);
  }

  const std::size_t gsize = std::size_t{1} << free_count;          // n^alpha
  const std::size_t gcount = static_cast<std::size_t>(n) / gsize;  // n^(1-alpha)
  mpz_class S;
  mpz_class gfact = factorial_big(static_cast<unsigned long>(gsize));
  mpz_pow_ui(S.get_mpz_t(), gfact.get_mpz_t(), static_cast<unsigned long>(gcount));
  if (S > static_cast<unsigned long>(member_cap))
    return PermFamily::counted(n, D, "valuation", S);

  std::vector<std::vector<int>> groups(gcount);
  for (int v = 0; v < n; ++v) {
    std::size_t z = 0;
    for (std::size_t k = 0; k < fixed_bits.size(); ++k)
      if (v & (1 << fixed_bits[k])) z |= std::size_t{1} << k;
    groups[z].push_back(v);  // ascending since v ascends
  }

  // all orderings of each group's values
  std::vector<std::vector<std::vector<int>>> orderings(gcount);
  for (std::size_t z = 0; z < gcount; ++z) {
    std::vector<int> o = groups[z];
    do orderings[z].push_back(o);
    while (std::next_permutation(o.begin(), o.end()));
  }

  PermFamily F(n, D, "valuation");
  std::vector<std::size_t> idx(gcount, 0);
  std::vector<int> member(n);
  while (true) {
    for (std::size_t z = 0; z < gcount; ++z) {
      const auto& o = orderings[z][idx[z]];
      for (std::size_t i = 0; i < gsize; ++i)
        member[z * gsize + i] = o[i] + 1;  // shift {0..n-1} -> [n]
    }
    F.add(member);
    std::size_t z = 0;
    for (; z < gcount; ++z) {
      if (++idx[z] < orderings[z].size()) break;
      idx[z] = 0;
    }
    if (z == gcount) break;
  }
  F.seal();
  if (F.claimed_size() != S)
    throw std::logic_error("construct_valuation: size does not match formula");
  return F;
}

PermFamily construct_residue_concat(int n, int q, const BaseFamilyProvider& base,
                                    std::size_t member_cap) {
  if (n < 1 || q < 1)
    throw std::invalid_argument("construct_residue_concat: need n, q >= 1");
  DistanceSet D = DistanceSet::finite({q});

  // classes ordered by smallest element: residues 1, 2, ..., q-1, 0
  std::vector<std::vector<int>> cls;
  for (int m = 1; m <= q && m <= n; ++m) {
    std::vector<int> c;
    for (int v = m; v <= n; v += q) c.push_back(v);
    cls.push_back(std::move(c));
  }
  std::vector<PermFamily> fams;
  mpz_class S = 1;
  for (const auto& c : cls) {
    PermFamily bf = base(static_cast<int>(c.size()));
    if (!bf.materialized() || bf.n() != static_cast<int>(c.size()))
      throw std::invalid_argument(
          "construct_residue_concat: base must materialize a family on [s]");
    S *= static_cast<unsigned long>(bf.size());
    fams.push_back(std::move(bf));
  }
  if (S > static_cast<unsigned long>(member_cap))
    return PermFamily::counted(n, D, "residue_concat", S);

  std::vector<int> start(cls.size() + 1, 0);
  for (std::size_t k = 0; k < cls.size(); ++k)
    start[k + 1] = start[k] + static_cast<int>(cls[k].size());

  PermFamily F(n, D, "residue_concat");
  std::vector<std::size_t> idx(cls.size(), 0);
  std::vector<int> member(n);
  while (true) {
    for (std::size_t k = 0; k < cls.size(); ++k) {
      auto bm = fams[k].member(idx[k]);
      for (std::size_t i = 0; i < cls[k].size(); ++i)
        member[start[k] + static_cast<int>(i)] = cls[k][bm[i] - 1];
    }
    F.add(member);
    std::size_t k = 0;
    for (; k < cls.size(); ++k) {
      if (++idx[k] < fams[k].size()) break;
      idx[k] = 0;
    }
    if (k == cls.size()) break;
  }
  F.seal();
  if (F.claimed_size() != S)
    throw std::logic_error("construct_residue_concat: size does not match product");
  return F;
}

PermFamily construct_residue_concat(int n, int q, std::size_t member_cap) {
  BaseFamilyProvider exact = [](int s) {
    if (s > 6)
      throw cap_exceeded(
          "construct_residue_concat: exact base families capped at class size 6, got " +
              std::to_string(s),
          6);
    ConflictGraph g = build_conflict_graph(s, DistanceSet::finite({1}));
    SolveResult r = max_clique(g);
    PermFamily F(s, DistanceSet::finite({1}), "solver-exact");
    for (std::size_t u : r.clique_witness) {
      auto seq = g.vertex(u);
      std::vector<int> perm(seq.begin(), seq.end());
      F.add(perm);
    }
    F.seal();
    return F;
  };
  return construct_residue_concat(n, q, exact, member_cap);
}

}  // namespace permdiff
