#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "permdiff/distance_set.hpp"
#include "permdiff/finite_graph.hpp"
#include "permdiff/perm.hpp"

namespace permdiff {

using BigInt = mpz_class;

BigInt factorial_big(unsigned long n);
// log base 2 of a positive big integer, computed from the exact value
double log2_big(const BigInt& v);

// n!/2^floor(n/2)
BigInt formula_theorem1(unsigned long n);
// n!/((2^floor(a/2))^(q-m) * (2^floor((a+1)/2))^m), a = n/q, m = n mod q
BigInt formula_corollary(unsigned long n, unsigned long q);
// C(n, floor(n/2))
BigInt formula_binomial_middle(unsigned long n);

struct Bound {
  BigInt value;
  std::string provenance;  // construction | formula | certificate | literature | solver
};

// Finite-n estimate: exact integer bounds on T(n, D). Logs are base 2.
struct BoundReport {
  unsigned long n = 0;
  std::string d_spec;
  Bound lower, upper;
  double log2_lower = 0, log2_upper = 0;
};

BoundReport make_bound_report(unsigned long n, std::string d_spec, Bound lower, Bound upper);

// D = 2N sandwich: n!(ceil(n/2)+1)/(2 C(n,floor(n/2))) <= T <= n!/2^floor(n/2).
// The lower expression also equals (1/2)(ceil(n/2)+1)! floor(n/2)!.
BoundReport hookup_bounds(unsigned long n);

// E_alpha sandwich at admissible n = 2^(q t'):
//   (n^alpha)!^(n^(1-alpha)) <= T(n, E) <= n!/(n^(1-alpha))!^(n^alpha)
// and the role-swapped pair for the complement.
struct ValuationBounds {
  BoundReport e;
  BoundReport complement;
};
ValuationBounds valuation_bounds(unsigned long n, unsigned long p, unsigned long q);

// chi(M)^n with the chromatic number computed exactly (small M only).
BigInt chromatic_power_bound(const QuotientGraph& M, unsigned long n);

// Fractional-chromatic upper bound n!/|C| from a certificate family C that is
// independent in H_D(n): every pair, every position differs by {0} or a
// non-D value. The certificate is validated before use.
enum class CertValidationMode { Exhaustive, Sampled };
struct CertValidation {
  CertValidationMode mode = CertValidationMode::Exhaustive;
  std::uint64_t sample_pairs = 100000;
  std::uint64_t seed = 1;
  int workers = 1;
};
BigInt certificate_upper_bound(const PermFamily& C, const DistanceSet& D,
                               CertValidation validation = {});

// Interval for (1/n) log2(T(n,D) * T(n, complement D) / n!) from a report pair.
struct SplitStrengthEstimate {
  unsigned long n = 0;
  std::string d_spec;
  double lo = 0, hi = 0;
};
SplitStrengthEstimate split_strength(unsigned long n, const BoundReport& d_report,
                                     const BoundReport& dbar_report);

// Literature reference for D = {1}: floor(10^((n-4)/4)) <= T(n,{1}) <= 2^n.
BoundReport kms_reference_bounds(unsigned long n);

}  // namespace permdiff
