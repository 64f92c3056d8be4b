#include "permdiff/distance_set.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace permdiff {

int ex_valuation(unsigned long m) {
  if (m == 0) throw std::invalid_argument("ex_valuation: m must be >= 1");
  return std::countr_zero(m);
}

namespace {

std::vector<long> checked_diff_list(std::vector<long> ds, const char* who) {
  if (ds.empty())
    throw std::invalid_argument(std::string(who) + ": difference list is empty");
  std::sort(ds.begin(), ds.end());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  if (ds.front() < 1)
    throw std::invalid_argument(std::string(who) + ": differences must be positive");
  return ds;
}

std::string join(const std::vector<long>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  return os.str();
}

std::vector<long> split_longs(std::string_view s, const char* who) {
  std::vector<long> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t next = s.find(',', pos);
    std::string_view tok = s.substr(pos, next == std::string_view::npos ? s.size() - pos : next - pos);
    long v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size())
      throw std::invalid_argument(std::string(who) + ": bad integer '" + std::string(tok) + "'");
    out.push_back(v);
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

}  // namespace

DistanceSet DistanceSet::finite(std::vector<long> ds) {
  DistanceSet d(Kind::Finite);
  d.values_ = checked_diff_list(std::move(ds), "finite");
  return d;
}

DistanceSet DistanceSet::cofinite(std::vector<long> ds) {
  DistanceSet d(Kind::Cofinite);
  d.values_ = checked_diff_list(std::move(ds), "cofinite");
  return d;
}

DistanceSet DistanceSet::residue(long modulus, std::vector<long> allowed) {
  if (modulus < 2) throw std::invalid_argument("residue: modulus must be >= 2");
  if (allowed.empty()) throw std::invalid_argument("residue: allowed list is empty");
  std::sort(allowed.begin(), allowed.end());
  allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
  for (long a : allowed)
    if (a < 0 || a >= modulus)
      throw std::invalid_argument("residue: allowed residue out of [0, modulus)");
  DistanceSet d(Kind::Residue);
  d.modulus_ = modulus;
  d.values_ = std::move(allowed);
  return d;
}

DistanceSet DistanceSet::valuation(long p, long q) {
  if (p < 1 || q <= p) throw std::invalid_argument("valuation: need 1 <= p < q");
  DistanceSet d(Kind::Valuation);
  d.p_ = p;
  d.q_ = q;
  return d;
}

DistanceSet DistanceSet::complement() const {
  if (kind_ == Kind::Complement) return *inner_;
  DistanceSet d(Kind::Complement);
  d.inner_ = std::make_shared<DistanceSet>(*this);
  return d;
}

const DistanceSet& DistanceSet::inner() const {
  if (kind_ != Kind::Complement)
    throw std::logic_error("inner(): not a complement set");
  return *inner_;
}

bool DistanceSet::contains(long d) const {
  if (d < 1) throw std::invalid_argument("contains: difference must be >= 1");
  switch (kind_) {
    case Kind::Finite:
      return std::binary_search(values_.begin(), values_.end(), d);
    case Kind::Cofinite:
      return !std::binary_search(values_.begin(), values_.end(), d);
    case Kind::Residue:
      return std::binary_search(values_.begin(), values_.end(), d % modulus_);
    case Kind::Valuation:
      return ex_valuation(static_cast<unsigned long>(d)) % q_ < p_;
    case Kind::Complement:
      return !inner_->contains(d);
  }
  return false;
}

std::string DistanceSet::spec() const {
  switch (kind_) {
    case Kind::Finite:
      return "finite:" + join(values_);
    case Kind::Cofinite:
      return "cofinite:" + join(values_);
    case Kind::Residue:
      return "residue:" + std::to_string(modulus_) + ":" + join(values_);
    case Kind::Valuation:
      return "valuation:" + std::to_string(p_) + ":" + std::to_string(q_);
    case Kind::Complement:
      return "complement(" + inner_->spec() + ")";
  }
  return {};
}

DistanceSet DistanceSet::parse(std::string_view text) {
  if (text.starts_with("complement(")) {
    if (!text.ends_with(')'))
      throw std::invalid_argument("parse: unbalanced complement(...)");
    return parse(text.substr(11, text.size() - 12)).complement();
  }
  if (text.starts_with("finite:"))
    return finite(split_longs(text.substr(7), "finite"));
  if (text.starts_with("cofinite:"))
    return cofinite(split_longs(text.substr(9), "cofinite"));
  if (text.starts_with("residue:")) {
    std::string_view rest = text.substr(8);
    size_t colon = rest.find(':');
    if (colon == std::string_view::npos)
      throw std::invalid_argument("parse: residue needs modulus and allowed list");
    auto mod = split_longs(rest.substr(0, colon), "residue");
    if (mod.size() != 1) throw std::invalid_argument("parse: residue modulus must be a single integer");
    return residue(mod[0], split_longs(rest.substr(colon + 1), "residue"));
  }
  if (text.starts_with("valuation:")) {
    std::string_view rest = text.substr(10);
    size_t colon = rest.find(':');
    if (colon == std::string_view::npos)
      throw std::invalid_argument("parse: valuation needs p and q");
    auto p = split_longs(rest.substr(0, colon), "valuation");
    auto q = split_longs(rest.substr(colon + 1), "valuation");
    if (p.size() != 1 || q.size() != 1)
      throw std::invalid_argument("parse: valuation p,q must be single integers");
    return valuation(p[0], q[0]);
  }
  throw std::invalid_argument("parse: unknown distance-set spec '" + std::string(text) + "'");
}

InducedGraph induced_graph(const DistanceSet& D, int n) {
  if (n < 1) throw std::invalid_argument("induced_graph: n must be >= 1");
  InducedGraph g;
  g.n = n;
  g.adj.assign(static_cast<size_t>(n) * n, 0);
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      if (D.contains(b - a)) {
        g.adj[static_cast<size_t>(a - 1) * n + (b - 1)] = 1;
        g.adj[static_cast<size_t>(b - 1) * n + (a - 1)] = 1;
      }
  return g;
}

}  // namespace permdiff
