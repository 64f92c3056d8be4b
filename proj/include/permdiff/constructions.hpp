#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "permdiff/perm.hpp"

namespace permdiff {

inline constexpr std::size_t kDefaultMemberCap = 2'000'000;
inline constexpr std::size_t kDefaultPermCap = 40320;  // 8!

// Pairwise ComplementOf{1}-different family of size n!/2^floor(n/2).
// Odd n: B_1 = {(1)}; A^j = psi_insert^j(B_{n-2}) filtered to position(n-2) < j,
// A_n = union over j, B_n = all cyclic shifts. Even n: build A_{n+1}, delete
// the leading n+1. Falls back to a counting-only family above member_cap.
PermFamily construct_theorem1(int n, std::size_t member_cap = kDefaultMemberCap);

// Partition of S_n into blocks generated by the commuting value swaps
// (1 2),(3 4),...; each block has 2^floor(n/2) members, pairwise differing
// positionwise only by {0,1}. Doubles as an optimal proper coloring of the
// ComplementOf{1} conflict graph.
struct CosetPartition {
  int n = 0;
  std::vector<std::vector<Perm>> classes;
};
CosetPartition coset_partition(int n, std::size_t perm_cap = kDefaultPermCap);

// Pairwise ComplementOf{q}-different family: positions are split by the
// residue pattern of the values they hold; each residue class carries an
// order-isomorphic copy of construct_theorem1 on its values.
PermFamily construct_corollary(int n, int q, std::size_t member_cap = kDefaultMemberCap);

// One permutation per floor(n/2)-subset of positions: evens ascending there,
// odds ascending elsewhere. Pairwise different by an odd number somewhere
// (D = ComplementOf(2N)), size C(n, floor(n/2)).
PermFamily construct_even_positions(int n, std::size_t member_cap = kDefaultMemberCap);

// Even permutations of odds + a placeholder, hooked to every permutation of
// the evens (placeholder replaced by its first entry, rest appended).
// Pairwise different by an even number somewhere (D = 2N),
// size (1/2)(ceil(n/2)+1)! * floor(n/2)!.
PermFamily construct_hookup(int n, std::size_t member_cap = kDefaultMemberCap);

// Family for D = E_alpha = {m : ex(m) mod q < p} at n = 2^(q*t'): values
// {0..n-1} grouped by the fixed bits of their binary expansion, all
// permutations within each group's position block, all cross-group
// combinations. Emitted shifted to [n]. Size (n^alpha)!^(n^(1-alpha)).
PermFamily construct_valuation(int n, int p, int q, std::size_t member_cap = kDefaultMemberCap);

// Family for D = {q}: each congruence class of [n] mod q carries an
// order-isomorphic copy of a pairwise {1}-different family supplied by
// `base`, in consecutive position blocks; members are all combinations.
using BaseFamilyProvider = std::function<PermFamily(int)>;
PermFamily construct_residue_concat(int n, int q, const BaseFamilyProvider& base,
                                    std::size_t member_cap = kDefaultMemberCap);
// Convenience overload: base = exact solver optimum for D = {1} (class sizes
// capped at 6 to keep the solve instant).
PermFamily construct_residue_concat(int n, int q,
                                    std::size_t member_cap = kDefaultMemberCap);

}  // namespace permdiff
