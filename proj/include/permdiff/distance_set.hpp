#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace permdiff {

// Largest s such that 2^s divides m. Rejects m = 0.
int ex_valuation(unsigned long m);

// A set D of positive integer differences. Membership is decidable for
// arbitrarily large d; only the finite kinds store their elements.
//
// Text grammar (round-trips through parse/spec):
//   finite:1,3        cofinite:2          residue:5:1,4
//   valuation:1:2     complement(finite:1)
class DistanceSet {
public:
  enum class Kind { Finite, Cofinite, Residue, Valuation, Complement };

  static DistanceSet finite(std::vector<long> ds);
  static DistanceSet cofinite(std::vector<long> ds);  // all d >= 1 except ds
  static DistanceSet residue(long modulus, std::vector<long> allowed);
  // {m : ex(m) mod q < p}, 1 <= p < q
  static DistanceSet valuation(long p, long q);

  DistanceSet complement() const;  // complement(complement(D)) unwraps to D

  bool contains(long d) const;  // d >= 1 required
  Kind kind() const { return kind_; }

  std::string spec() const;
  static DistanceSet parse(std::string_view text);

  // Finite/Cofinite: the listed differences; Residue: allowed residues.
  const std::vector<long>& values() const { return values_; }
  long modulus() const { return modulus_; }
  long val_p() const { return p_; }
  long val_q() const { return q_; }
  const DistanceSet& inner() const;  // Complement only

  bool operator==(const DistanceSet& o) const { return spec() == o.spec(); }

private:
  explicit DistanceSet(Kind k) : kind_(k) {}

  Kind kind_;
  std::vector<long> values_;
  long modulus_ = 0;
  long p_ = 0, q_ = 0;
  std::shared_ptr<const DistanceSet> inner_;
};

// Finite graph induced by D on vertices 1..n: a ~ b iff |a-b| in D.
struct InducedGraph {
  int n = 0;
  std::vector<std::uint8_t> adj;  // n*n, symmetric, zero diagonal

  bool adjacent(int a, int b) const {  // 1-based vertices
    return adj[static_cast<size_t>(a - 1) * n + (b - 1)] != 0;
  }
};

InducedGraph induced_graph(const DistanceSet& D, int n);

}  // namespace permdiff
