#include "permdiff/bounds.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "permdiff/verify.hpp"

namespace permdiff {

BigInt factorial_big(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

double log2_big(const BigInt& v) {
  if (v <= 0) throw std::invalid_argument("log2_big: value must be positive");
  long exp = 0;
  double d = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::log2(d) + static_cast<double>(exp);
}

BigInt formula_theorem1(unsigned long n) {
  if (n < 1) throw std::invalid_argument("formula_theorem1: n must be >= 1");
  BigInt f = factorial_big(n);
  BigInt div = BigInt(1) << (n / 2);
  BigInt r;
  mpz_divexact(r.get_mpz_t(), f.get_mpz_t(), div.get_mpz_t());
  return r;
}

BigInt formula_corollary(unsigned long n, unsigned long q) {
  if (n < 1 || q < 1) throw std::invalid_argument("formula_corollary: need n, q >= 1");
  unsigned long a = n / q, m = n % q;
  BigInt div = BigInt(1) << ((a / 2) * (q - m) + ((a + 1) / 2) * m);
  BigInt f = factorial_big(n);
  if (!mpz_divisible_p(f.get_mpz_t(), div.get_mpz_t()))
    throw std::logic_error("formula_corollary: non-integer result");
  BigInt r;
  mpz_divexact(r.get_mpz_t(), f.get_mpz_t(), div.get_mpz_t());
  return r;
}

BigInt formula_binomial_middle(unsigned long n) {
  if (n < 1) throw std::invalid_argument("formula_binomial_middle: n must be >= 1");
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, n / 2);
  return r;
}

BoundReport make_bound_report(unsigned long n, std::string d_spec, Bound lower,
                              Bound upper) {
  BoundReport rep;
  rep.n = n;
  rep.d_spec = std::move(d_spec);
  rep.log2_lower = log2_big(lower.value);
  rep.log2_upper = log2_big(upper.value);
  rep.lower = std::move(lower);
  rep.upper = std::move(upper);
  if (rep.lower.value > rep.upper.value)
    throw std::invalid_argument("bound report: lower exceeds upper for " + rep.d_spec +
                                " at n=" + std::to_string(n));
  return rep;
}

BoundReport hookup_bounds(unsigned long n) {
  if (n < 2) throw std::invalid_argument("hookup_bounds: n must be >= 2");
  BigInt num = factorial_big(n) * ((n + 1) / 2 + 1);
  BigInt den = 2 * formula_binomial_middle(n);
  if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
    throw std::logic_error("hookup_bounds: lower bound is not an integer");
  BigInt lower;
  mpz_divexact(lower.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return make_bound_report(n, DistanceSet::residue(2, {0}).spec(),
                           {lower, "construction"},
                           {formula_theorem1(n), "formula"});
}

ValuationBounds valuation_bounds(unsigned long n, unsigned long p, unsigned long q) {
  if (p < 1 || q <= p) throw std::invalid_argument("valuation_bounds: need 1 <= p < q");
  if (n < 2 || (n & (n - 1)) != 0)
    throw std::invalid_argument("valuation_bounds: n must be 2^(q*t'), t' >= 1");
  unsigned long t = static_cast<unsigned long>(std::countr_zero(n));
  if (t % q != 0 || t / q < 1)
    throw std::invalid_argument("valuation_bounds: n must be 2^(q*t'), t' >= 1");
  unsigned long tp = t / q;
  unsigned long na = 1ul << (tp * p);        // n^alpha
  unsigned long nb = 1ul << (tp * (q - p));  // n^(1-alpha)

  auto pack = [n](unsigned long block, unsigned long count, std::string d_spec) {
    BigInt lower;
    BigInt bf = factorial_big(block);
    mpz_pow_ui(lower.get_mpz_t(), bf.get_mpz_t(), count);
    BigInt f = factorial_big(n);
    BigInt cf = factorial_big(count);
    BigInt cpow;
    mpz_pow_ui(cpow.get_mpz_t(), cf.get_mpz_t(), block);
    if (!mpz_divisible_p(f.get_mpz_t(), cpow.get_mpz_t()))
      throw std::logic_error("valuation_bounds: non-integer upper bound");
    BigInt upper;
    mpz_divexact(upper.get_mpz_t(), f.get_mpz_t(), cpow.get_mpz_t());
    return make_bound_report(n, std::move(d_spec), {lower, "construction"},
                             {upper, "certificate"});
  };

  ValuationBounds vb{
      pack(na, nb, DistanceSet::valuation(p, q).spec()),
      pack(nb, na, DistanceSet::valuation(p, q).complement().spec()),
  };
  return vb;
}

BigInt chromatic_power_bound(const QuotientGraph& M, unsigned long n) {
  int chi = exact_chromatic_number(M);
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(chi), n);
  return r;
}

BigInt certificate_upper_bound(const PermFamily& C, const DistanceSet& D,
                               CertValidation validation) {
  if (!C.materialized() || C.size() == 0)
    throw std::invalid_argument("certificate_upper_bound: need a materialized family");
  DistanceSet allowed = D.complement();  // positionwise differences C may use
  std::optional<CertificateViolation> viol;
  if (validation.mode == CertValidationMode::Exhaustive)
    viol = strong_certificate_violation(C, allowed, validation.workers);
  else
    viol = strong_certificate_violation_sampled(
        C, allowed, {validation.sample_pairs, validation.seed});
  if (viol) {
    std::ostringstream os;
    os << "certificate_upper_bound: members " << viol->member_a << " and "
       << viol->member_b << " differ by a D value at position " << viol->position
       << " — family is not independent in H_D";
    throw std::invalid_argument(os.str());
  }
  BigInt f = factorial_big(static_cast<unsigned long>(C.n()));
  BigInt r;
  mpz_fdiv_q_ui(r.get_mpz_t(), f.get_mpz_t(), static_cast<unsigned long>(C.size()));
  return r;
}

SplitStrengthEstimate split_strength(unsigned long n, const BoundReport& d_report,
                                     const BoundReport& dbar_report) {
  if (d_report.n != n || dbar_report.n != n)
    throw std::invalid_argument("split_strength: reports must share n");
  double lf = log2_big(factorial_big(n));
  SplitStrengthEstimate est;
  est.n = n;
  est.d_spec = d_report.d_spec;
  est.lo = (d_report.log2_lower + dbar_report.log2_lower - lf) / static_cast<double>(n);
  est.hi = (d_report.log2_upper + dbar_report.log2_upper - lf) / static_cast<double>(n);
  return est;
}

BoundReport kms_reference_bounds(unsigned long n) {
  if (n < 1) throw std::invalid_argument("kms_reference_bounds: n must be >= 1");
  BigInt lower = 1;
  if (n >= 4) {
    BigInt pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, n - 4);
    mpz_root(lower.get_mpz_t(), pow10.get_mpz_t(), 4);
  }
  if (lower < 1) lower = 1;
  BigInt upper = BigInt(1) << n;
  return make_bound_report(n, DistanceSet::finite({1}).spec(), {lower, "literature"},
                           {upper, "literature"});
}

}  // namespace permdiff
