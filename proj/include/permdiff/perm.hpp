#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "permdiff/common.hpp"
#include "permdiff/distance_set.hpp"

namespace permdiff {

bool is_permutation(std::span<const int> x);
void require_permutation(std::span<const int> x, const char* who);

// result[(i+k) mod n] = x[i]; k may be negative.
Perm cyclic_shift(const Perm& x, long k);

// Transposition of the *values* i and j (positions holding them swap).
Perm sigma_swap(const Perm& x, int i, int j);

// Insertion map from permutations of [n-2] to permutations of [n], 2 <= j <= n:
// r_1 = n; r_i = pi_{i-1} for 1 < i < j; r_j = n-1; r_i = pi_{i-2} for j < i <= n.
Perm psi_insert(const Perm& pi, int j, int n);

// Parity of the sequence of distinct symbols; kStar ranks after every integer.
bool is_even_permutation(std::span<const int> symbols);

// Position (1-based) of value v in x.
int position_of(std::span<const int> x, int v);

// Lexicographic rank of x among all permutations of [n], 0-based.
std::uint64_t lex_rank(std::span<const int> x);

// A family of permutations of [n], kept in canonical (lexicographically
// sorted, deduplicated) order once sealed. Families may also exist in
// counting-only form: a claimed size with no materialized members.
class PermFamily {
public:
  PermFamily(int n, DistanceSet claimed_D, std::string provenance);
  static PermFamily counted(int n, DistanceSet claimed_D, std::string provenance,
                            mpz_class claimed_size);

  int n() const { return n_; }
  bool materialized() const { return materialized_; }
  std::size_t size() const { return flat_.empty() ? 0 : flat_.size() / n_; }
  const mpz_class& claimed_size() const { return claimed_size_; }
  const DistanceSet& claimed_D() const { return claimed_D_; }
  const std::string& provenance() const { return provenance_; }

  std::span<const std::int32_t> member(std::size_t i) const {
    return {flat_.data() + i * n_, static_cast<std::size_t>(n_)};
  }
  Perm member_perm(std::size_t i) const;

  void add(std::span<const int> perm);
  // Sort members, drop duplicates, set claimed_size = member count.
  void seal();
  bool sealed() const { return sealed_; }

  bool contains_member(std::span<const int> perm) const;  // sealed families

  bool operator==(const PermFamily& o) const {
    return n_ == o.n_ && flat_ == o.flat_;
  }

private:
  int n_;
  bool materialized_ = true;
  bool sealed_ = false;
  std::vector<std::int32_t> flat_;
  mpz_class claimed_size_ = 0;
  DistanceSet claimed_D_;
  std::string provenance_;
};

}  // namespace permdiff
