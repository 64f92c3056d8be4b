#include "permdiff/perm.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace permdiff {

bool is_permutation(std::span<const int> x) {
  const int n = static_cast<int>(x.size());
  std::vector<char> seen(n + 1, 0);
  for (int v : x) {
    if (v < 1 || v > n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

void require_permutation(std::span<const int> x, const char* who) {
  if (x.empty())
    throw std::invalid_argument(std::string(who) + ": empty sequence");
  if (!is_permutation(x))
    throw std::invalid_argument(std::string(who) + ": not a permutation of [n]");
}

Perm cyclic_shift(const Perm& x, long k) {
  require_permutation(x, "cyclic_shift");
  const long n = static_cast<long>(x.size());
  long s = ((k % n) + n) % n;
  Perm r(x.size());
  for (long i = 0; i < n; ++i) r[(i + s) % n] = x[i];
  return r;
}

Perm sigma_swap(const Perm& x, int i, int j) {
  require_permutation(x, "sigma_swap");
  const int n = static_cast<int>(x.size());
  if (i < 1 || i > n || j < 1 || j > n || i == j)
    throw std::invalid_argument("sigma_swap: need distinct values i,j in [n]");
  Perm r = x;
  std::swap(r[position_of(x, i) - 1], r[position_of(x, j) - 1]);
  return r;
}

Perm psi_insert(const Perm& pi, int j, int n) {
  if (n < 3) throw std::invalid_argument("psi_insert: n must be >= 3");
  if (static_cast<int>(pi.size()) != n - 2)
    throw std::invalid_argument("psi_insert: pi must have length n-2");
  require_permutation(pi, "psi_insert");
  if (j < 2 || j > n)
    throw std::invalid_argument("psi_insert: need 2 <= j <= n");
  Perm r(n);
  r[0] = n;
  for (int i = 2; i < j; ++i) r[i - 1] = pi[i - 2];
  r[j - 1] = n - 1;
  for (int i = j + 1; i <= n; ++i) r[i - 1] = pi[i - 3];
  return r;
}

bool is_even_permutation(std::span<const int> symbols) {
  const size_t m = symbols.size();
  if (m == 0) throw std::invalid_argument("is_even_permutation: empty sequence");
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j)
      if (symbols[i] == symbols[j])
        throw std::invalid_argument("is_even_permutation: repeated symbol");
  // rank symbols by value; kStar is the largest int so it ranks last
  int inversions = 0;
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j)
      if (symbols[i] > symbols[j]) ++inversions;
  return inversions % 2 == 0;
}

int position_of(std::span<const int> x, int v) {
  for (size_t i = 0; i < x.size(); ++i)
    if (x[i] == v) return static_cast<int>(i) + 1;
  throw std::invalid_argument("position_of: value not present");
}

std::uint64_t lex_rank(std::span<const int> x) {
  const int n = static_cast<int>(x.size());
  if (n > 20) throw std::invalid_argument("lex_rank: n too large for 64-bit rank");
  require_permutation(x, "lex_rank");
  std::vector<std::uint64_t> fact(n, 1);
  for (int i = 1; i < n; ++i) fact[i] = fact[i - 1] * i;
  std::uint64_t rank = 0;
  std::vector<char> used(n + 1, 0);
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int v = 1; v < x[i]; ++v) smaller += !used[v];
    rank += smaller * fact[n - 1 - i];
    used[x[i]] = 1;
  }
  return rank;
}

PermFamily::PermFamily(int n, DistanceSet claimed_D, std::string provenance)
    : n_(n), claimed_D_(std::move(claimed_D)), provenance_(std::move(provenance)) {
  if (n < 1) throw std::invalid_argument("PermFamily: n must be >= 1");
}

PermFamily PermFamily::counted(int n, DistanceSet claimed_D, std::string provenance,
                               mpz_class claimed_size) {
  PermFamily f(n, std::move(claimed_D), std::move(provenance));
  f.materialized_ = false;
  f.sealed_ = true;
  f.claimed_size_ = std::move(claimed_size);
  return f;
}

Perm PermFamily::member_perm(std::size_t i) const {
  auto m = member(i);
  return Perm(m.begin(), m.end());
}

void PermFamily::add(std::span<const int> perm) {
  if (!materialized_) throw std::logic_error("PermFamily::add: counting-only family");
  if (sealed_) throw std::logic_error("PermFamily::add: family already sealed");
  if (static_cast<int>(perm.size()) != n_)
    throw std::invalid_argument("PermFamily::add: wrong length");
  require_permutation(perm, "PermFamily::add");
  flat_.insert(flat_.end(), perm.begin(), perm.end());
}

void PermFamily::seal() {
  if (!materialized_) return;
  const size_t m = size();
  std::vector<std::uint32_t> idx(m);
  std::iota(idx.begin(), idx.end(), 0);
  const std::int32_t* base = flat_.data();
  const int n = n_;
  auto row_less = [base, n](std::uint32_t a, std::uint32_t b) {
    return std::lexicographical_compare(base + static_cast<size_t>(a) * n,
                                        base + static_cast<size_t>(a) * n + n,
                                        base + static_cast<size_t>(b) * n,
                                        base + static_cast<size_t>(b) * n + n);
  };
  std::sort(idx.begin(), idx.end(), row_less);
  std::vector<std::int32_t> out;
  out.reserve(flat_.size());
  for (size_t k = 0; k < m; ++k) {
    const std::int32_t* row = base + static_cast<size_t>(idx[k]) * n;
    if (!out.empty() && std::equal(row, row + n, out.data() + out.size() - n)) continue;
    out.insert(out.end(), row, row + n);
  }
  flat_ = std::move(out);
  sealed_ = true;
  claimed_size_ = static_cast<unsigned long>(size());
}

bool PermFamily::contains_member(std::span<const int> perm) const {
  if (!sealed_) throw std::logic_error("contains_member: family not sealed");
  if (static_cast<int>(perm.size()) != n_) return false;
  const size_t m = size();
  size_t lo = 0, hi = m;
  while (lo < hi) {
    size_t mid = (lo + hi) / 2;
    auto row = member(mid);
    if (std::lexicographical_compare(row.begin(), row.end(), perm.begin(), perm.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo == m) return false;
  auto row = member(lo);
  return std::equal(row.begin(), row.end(), perm.begin(), perm.end());
}

}  // namespace permdiff
