#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>

#include "permdiff/distance_set.hpp"
#include "permdiff/perm.hpp"

namespace permdiff {

// True iff some position i has |x_i - y_i| in D.
bool g_different(std::span<const int> x, std::span<const int> y, const DistanceSet& D);

enum class VerifyStatus { AllPairsValid, FailureWitness, SampledValid };

struct VerifyReport {
  VerifyStatus status = VerifyStatus::AllPairsValid;
  // member indices of a failing (non-G-different) pair
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  std::uint64_t pairs_checked = 0;
};

struct SampleSpec {
  std::uint64_t pairs;
  std::uint64_t seed;
};

// Exhaustive all-pairs check. The default entry point runs the OpenMP kernel
// with `workers` threads; the serial variant is the reference implementation
// (deterministic first-in-order witness) used as its oracle.
VerifyReport verify_family(const PermFamily& F, const DistanceSet& D, int workers = 1);
VerifyReport verify_family_serial(const PermFamily& F, const DistanceSet& D);

// Uniformly sampled member pairs (with replacement); zero failures reported
// as SampledValid, otherwise the failing pair is the witness.
VerifyReport verify_family_sampled(const PermFamily& F, const DistanceSet& D,
                                   SampleSpec spec);

struct CertificateViolation {
  std::size_t member_a, member_b;
  int position;  // 1-based
};

// Strong pairwise property: for every pair and *every* position,
// x_i == y_i or |x_i - y_i| in D. Equivalent to: no pair of members is
// complement(D)-different.
std::optional<CertificateViolation> strong_certificate_violation(
    const PermFamily& F, const DistanceSet& D, int workers = 1);
bool verify_strong_certificate(const PermFamily& F, const DistanceSet& D,
                               int workers = 1);
std::optional<CertificateViolation> strong_certificate_violation_sampled(
    const PermFamily& F, const DistanceSet& D, SampleSpec spec);

}  // namespace permdiff
