#include "permdiff/verify.hpp"

#include <omp.h>

#include <atomic>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <vector>

namespace permdiff {

namespace {

// Value-level lookup tables so the hot loops never re-evaluate D membership:
// diff_tab[a-1][b-1] = |a-b| in D, eq_or_diff_tab additionally accepts a == b.
struct ValueTables {
  int n;
  std::vector<std::uint8_t> differ;      // |a-b| in D
  std::vector<std::uint8_t> eq_or_in_d;  // a == b or |a-b| in D

  explicit ValueTables(const DistanceSet& D, int n) : n(n) {
    differ.assign(static_cast<size_t>(n) * n, 0);
    eq_or_in_d.assign(static_cast<size_t>(n) * n, 0);
    for (int a = 1; a <= n; ++a)
      for (int b = 1; b <= n; ++b) {
        bool in = a != b && D.contains(std::abs(a - b));
        differ[static_cast<size_t>(a - 1) * n + (b - 1)] = in;
        eq_or_in_d[static_cast<size_t>(a - 1) * n + (b - 1)] = in || a == b;
      }
  }
};

inline bool pair_different(const std::int32_t* x, const std::int32_t* y, int n,
                           const std::uint8_t* tab, int stride) {
  for (int i = 0; i < n; ++i)
    if (tab[static_cast<size_t>(x[i] - 1) * stride + (y[i] - 1)]) return true;
  return false;
}

inline int pair_certificate_violation_pos(const std::int32_t* x, const std::int32_t* y,
                                          int n, const std::uint8_t* tab, int stride) {
  for (int i = 0; i < n; ++i)
    if (!tab[static_cast<size_t>(x[i] - 1) * stride + (y[i] - 1)]) return i + 1;
  return 0;
}

void require_materialized(const PermFamily& F, const char* who) {
  if (!F.materialized())
    throw std::invalid_argument(std::string(who) + ": family is counting-only");
}

}  // namespace

bool g_different(std::span<const int> x, std::span<const int> y, const DistanceSet& D) {
  if (x.size() != y.size())
    throw std::invalid_argument("g_different: length mismatch");
  if (x.empty()) throw std::invalid_argument("g_different: empty sequences");
  for (size_t i = 0; i < x.size(); ++i) {
    int d = std::abs(x[i] - y[i]);
    if (d != 0 && D.contains(d)) return true;
  }
  return false;
}

VerifyReport verify_family_serial(const PermFamily& F, const DistanceSet& D) {
  require_materialized(F, "verify_family");
  VerifyReport rep;
  const size_t m = F.size();
  if (m < 2) return rep;
  ValueTables tabs(D, F.n());
  const int n = F.n();
  for (size_t i = 0; i + 1 < m; ++i) {
    const std::int32_t* xi = F.member(i).data();
    for (size_t j = i + 1; j < m; ++j) {
      ++rep.pairs_checked;
      if (!pair_different(xi, F.member(j).data(), n, tabs.differ.data(), n)) {
        rep.status = VerifyStatus::FailureWitness;
        rep.witness = {i, j};
        return rep;
      }
    }
  }
  return rep;
}

VerifyReport verify_family(const PermFamily& F, const DistanceSet& D, int workers) {
  if (workers <= 1) return verify_family_serial(F, D);
  require_materialized(F, "verify_family");
  VerifyReport rep;
  const size_t m = F.size();
  if (m < 2) return rep;
  ValueTables tabs(D, F.n());
  const int n = F.n();
  std::atomic<bool> failed{false};
  std::atomic<std::uint64_t> pairs{0};
  size_t wit_i = 0, wit_j = 0;
#pragma omp parallel num_threads(workers)
  {
    std::uint64_t local_pairs = 0;
#pragma omp for schedule(dynamic, 8)
    for (long long i = 0; i < static_cast<long long>(m) - 1; ++i) {
      if (failed.load(std::memory_order_relaxed)) continue;
      const std::int32_t* xi = F.member(i).data();
      for (size_t j = i + 1; j < m; ++j) {
        ++local_pairs;
        if (!pair_different(xi, F.member(j).data(), n, tabs.differ.data(), n)) {
#pragma omp critical
          {
            if (!failed.load()) {
              wit_i = static_cast<size_t>(i);
              wit_j = j;
              failed.store(true);
            }
          }
          break;
        }
      }
    }
    pairs += local_pairs;
  }
  rep.pairs_checked = pairs.load();
  if (failed.load()) {
    rep.status = VerifyStatus::FailureWitness;
    rep.witness = {wit_i, wit_j};
  }
  return rep;
}

VerifyReport verify_family_sampled(const PermFamily& F, const DistanceSet& D,
                                   SampleSpec spec) {
  require_materialized(F, "verify_family_sampled");
  const size_t m = F.size();
  if (m < 2)
    return {VerifyStatus::SampledValid, std::nullopt, 0};
  ValueTables tabs(D, F.n());
  const int n = F.n();
  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<size_t> pick(0, m - 1);
  VerifyReport rep;
  rep.status = VerifyStatus::SampledValid;
  for (std::uint64_t k = 0; k < spec.pairs; ++k) {
    size_t i = pick(rng), j = pick(rng);
    while (j == i) j = pick(rng);
    ++rep.pairs_checked;
    if (!pair_different(F.member(i).data(), F.member(j).data(), n,
                        tabs.differ.data(), n)) {
      rep.status = VerifyStatus::FailureWitness;
      rep.witness = {std::min(i, j), std::max(i, j)};
      return rep;
    }
  }
  return rep;
}

std::optional<CertificateViolation> strong_certificate_violation(
    const PermFamily& F, const DistanceSet& D, int workers) {
  require_materialized(F, "verify_strong_certificate");
  const size_t m = F.size();
  if (m < 2) return std::nullopt;
  ValueTables tabs(D, F.n());
  const int n = F.n();
  if (workers <= 1) {
    for (size_t i = 0; i + 1 < m; ++i)
      for (size_t j = i + 1; j < m; ++j) {
        int pos = pair_certificate_violation_pos(F.member(i).data(), F.member(j).data(),
                                                 n, tabs.eq_or_in_d.data(), n);
        if (pos) return CertificateViolation{i, j, pos};
      }
    return std::nullopt;
  }
  std::atomic<bool> failed{false};
  CertificateViolation viol{};
#pragma omp parallel for schedule(dynamic, 8) num_threads(workers)
  for (long long i = 0; i < static_cast<long long>(m) - 1; ++i) {
    if (failed.load(std::memory_order_relaxed)) continue;
    for (size_t j = i + 1; j < m; ++j) {
      int pos = pair_certificate_violation_pos(F.member(i).data(), F.member(j).data(),
                                               n, tabs.eq_or_in_d.data(), n);
      if (pos) {
#pragma omp critical
        {
          if (!failed.load()) {
            viol = {static_cast<size_t>(i), j, pos};
            failed.store(true);
          }
        }
        break;
      }
    }
  }
  if (failed.load()) return viol;
  return std::nullopt;
}

bool verify_strong_certificate(const PermFamily& F, const DistanceSet& D, int workers) {
  return !strong_certificate_violation(F, D, workers).has_value();
}

std::optional<CertificateViolation> strong_certificate_violation_sampled(
    const PermFamily& F, const DistanceSet& D, SampleSpec spec) {
  require_materialized(F, "strong_certificate_violation_sampled");
  const size_t m = F.size();
  if (m < 2) return std::nullopt;
  ValueTables tabs(D, F.n());
  const int n = F.n();
  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<size_t> pick(0, m - 1);
  for (std::uint64_t k = 0; k < spec.pairs; ++k) {
    size_t i = pick(rng), j = pick(rng);
    while (j == i) j = pick(rng);
    int pos = pair_certificate_violation_pos(F.member(i).data(), F.member(j).data(), n,
                                             tabs.eq_or_in_d.data(), n);
    if (pos) return CertificateViolation{std::min(i, j), std::max(i, j), pos};
  }
  return std::nullopt;
}

}  // namespace permdiff
