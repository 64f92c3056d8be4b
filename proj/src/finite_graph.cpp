#include "permdiff/finite_graph.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "permdiff/common.hpp"

namespace permdiff {

void QuotientGraph::set_edge(int a, int b) {
  if (a < 0 || b < 0 || a >= r || b >= r || a == b)
    throw std::invalid_argument("set_edge: bad endpoints");
  adj[static_cast<size_t>(a) * r + b] = 1;
  adj[static_cast<size_t>(b) * r + a] = 1;
}

std::size_t QuotientGraph::edge_count() const {
  std::size_t c = 0;
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b) c += adjacent(a, b);
  return c;
}

QuotientGraph QuotientGraph::edgeless(int r) {
  if (r < 1) throw std::invalid_argument("edgeless: r must be >= 1");
  QuotientGraph g;
  g.r = r;
  g.adj.assign(static_cast<size_t>(r) * r, 0);
  return g;
}

QuotientGraph QuotientGraph::single_edge() {
  QuotientGraph g = edgeless(2);
  g.set_edge(0, 1);
  return g;
}

QuotientGraph QuotientGraph::complete(int r) {
  QuotientGraph g = edgeless(r);
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b) g.set_edge(a, b);
  return g;
}

QuotientGraph QuotientGraph::cycle(int r) {
  if (r < 3) throw std::invalid_argument("cycle: r must be >= 3");
  QuotientGraph g = edgeless(r);
  for (int a = 0; a < r; ++a) g.set_edge(a, (a + 1) % r);
  return g;
}

QuotientGraph QuotientGraph::from_edges(int r, const std::vector<std::pair<int, int>>& edges) {
  QuotientGraph g = edgeless(r);
  for (auto [a, b] : edges) g.set_edge(a, b);
  return g;
}

namespace {
long parse_long(std::string_view s, const char* who) {
  long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw std::invalid_argument(std::string(who) + ": bad integer '" + std::string(s) + "'");
  return v;
}
}  // namespace

QuotientGraph QuotientGraph::parse(std::string_view spec) {
  if (spec == "edge") return single_edge();
  if (spec.starts_with("cycle:"))
    return cycle(static_cast<int>(parse_long(spec.substr(6), "cycle")));
  if (spec.starts_with("complete:"))
    return complete(static_cast<int>(parse_long(spec.substr(9), "complete")));
  if (spec.starts_with("edgeless:"))
    return edgeless(static_cast<int>(parse_long(spec.substr(9), "edgeless")));
  if (spec.starts_with("edges:")) {
    std::string_view rest = spec.substr(6);
    size_t colon = rest.find(':');
    if (colon == std::string_view::npos)
      throw std::invalid_argument("edges: need edges:r:a-b,...");
    int r = static_cast<int>(parse_long(rest.substr(0, colon), "edges"));
    QuotientGraph g = edgeless(r);
    std::string_view list = rest.substr(colon + 1);
    size_t pos = 0;
    while (pos < list.size()) {
      size_t comma = list.find(',', pos);
      std::string_view tok =
          list.substr(pos, comma == std::string_view::npos ? list.size() - pos : comma - pos);
      size_t dash = tok.find('-');
      if (dash == std::string_view::npos)
        throw std::invalid_argument("edges: bad edge token '" + std::string(tok) + "'");
      g.set_edge(static_cast<int>(parse_long(tok.substr(0, dash), "edges")),
                 static_cast<int>(parse_long(tok.substr(dash + 1), "edges")));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    return g;
  }
  throw std::invalid_argument("unknown quotient-graph spec '" + std::string(spec) + "'");
}

std::string QuotientGraph::spec() const {
  if (r == 2 && adjacent(0, 1)) return "edge";
  if (edge_count() == 0) return "edgeless:" + std::to_string(r);
  if (is_cycle(r)) return "cycle:" + std::to_string(r);
  if (edge_count() == static_cast<size_t>(r) * (r - 1) / 2)
    return "complete:" + std::to_string(r);
  std::ostringstream os;
  os << "edges:" << r << ":";
  bool first = true;
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b)
      if (adjacent(a, b)) {
        if (!first) os << ',';
        os << a << '-' << b;
        first = false;
      }
  return os.str();
}

bool QuotientGraph::is_cycle(int len) const {
  if (r != len || len < 3) return false;
  if (edge_count() != static_cast<size_t>(len)) return false;
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b) {
      bool want = (b - a == 1) || (a == 0 && b == r - 1);
      if (adjacent(a, b) != want) return false;
    }
  return true;
}

QuotientGraph co_normal_product(std::span<const QuotientGraph> factors,
                                std::size_t vertex_cap) {
  if (factors.empty()) throw std::invalid_argument("co_normal_product: no factors");
  std::size_t total = 1;
  for (const auto& f : factors) {
    if (f.r < 1) throw std::invalid_argument("co_normal_product: empty factor");
    if (total > vertex_cap / static_cast<size_t>(f.r))
      throw cap_exceeded("co_normal_product: vertex count exceeds cap of " +
                             std::to_string(vertex_cap),
                         vertex_cap);
    total *= static_cast<size_t>(f.r);
  }
  QuotientGraph g = QuotientGraph::edgeless(static_cast<int>(total));
  const size_t k = factors.size();
  std::vector<int> tu(k), tv(k);
  auto decode = [&](size_t idx, std::vector<int>& out) {
    for (size_t c = k; c-- > 0;) {
      out[c] = static_cast<int>(idx % factors[c].r);
      idx /= factors[c].r;
    }
  };
  for (size_t u = 0; u < total; ++u) {
    decode(u, tu);
    for (size_t v = u + 1; v < total; ++v) {
      decode(v, tv);
      bool adj = false;
      for (size_t c = 0; c < k && !adj; ++c) adj = factors[c].adjacent(tu[c], tv[c]);
      if (adj) g.set_edge(static_cast<int>(u), static_cast<int>(v));
    }
  }
  return g;
}

QuotientGraph blow_up(const QuotientGraph& g, std::span<const int> sizes) {
  if (static_cast<int>(sizes.size()) != g.r)
    throw std::invalid_argument("blow_up: need one size per vertex");
  long total = 0;
  for (int s : sizes) {
    if (s < 1) throw std::invalid_argument("blow_up: sizes must be >= 1");
    total += s;
  }
  QuotientGraph out = QuotientGraph::edgeless(static_cast<int>(total));
  std::vector<int> start(g.r + 1, 0);
  for (int i = 0; i < g.r; ++i) start[i + 1] = start[i] + sizes[i];
  for (int a = 0; a < g.r; ++a)
    for (int b = a + 1; b < g.r; ++b)
      if (g.adjacent(a, b))
        for (int x = start[a]; x < start[a + 1]; ++x)
          for (int y = start[b]; y < start[b + 1]; ++y) out.set_edge(x, y);
  return out;
}

int greedy_coloring_bound(const QuotientGraph& g) {
  std::vector<int> order(g.r);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> deg(g.r, 0);
  for (int a = 0; a < g.r; ++a)
    for (int b = 0; b < g.r; ++b) deg[a] += g.adjacent(a, b);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return deg[a] > deg[b]; });
  std::vector<int> color(g.r, -1);
  int used = 0;
  for (int v : order) {
    std::vector<char> taken(used + 1, 0);
    for (int u = 0; u < g.r; ++u)
      if (color[u] >= 0 && g.adjacent(u, v)) taken[color[u]] = 1;
    int c = 0;
    while (c < used && taken[c]) ++c;
    color[v] = c;
    used = std::max(used, c + 1);
  }
  return used;
}

int exact_clique_number(const QuotientGraph& g) {
  if (g.r > 32) throw std::invalid_argument("exact_clique_number: graph too large");
  int best = 0;
  std::vector<int> cur;
  auto rec = [&](auto&& self, std::vector<int>& cand) -> void {
    best = std::max(best, static_cast<int>(cur.size()));
    for (size_t idx = 0; idx < cand.size(); ++idx) {
      int v = cand[idx];
      if (static_cast<int>(cur.size() + cand.size() - idx) <= best) return;
      std::vector<int> next;
      for (size_t k = idx + 1; k < cand.size(); ++k)
        if (g.adjacent(v, cand[k])) next.push_back(cand[k]);
      cur.push_back(v);
      self(self, next);
      cur.pop_back();
    }
  };
  std::vector<int> all(g.r);
  std::iota(all.begin(), all.end(), 0);
  rec(rec, all);
  return best;
}

namespace {
bool k_colorable(const QuotientGraph& g, int k, std::vector<int>& color, int v) {
  if (v == g.r) return true;
  int max_new = 0;
  for (int u = 0; u < v; ++u) max_new = std::max(max_new, color[u] + 1);
  for (int c = 0; c < std::min(k, max_new + 1); ++c) {
    bool ok = true;
    for (int u = 0; u < v && ok; ++u)
      if (g.adjacent(u, v) && color[u] == c) ok = false;
    if (!ok) continue;
    color[v] = c;
    if (k_colorable(g, k, color, v + 1)) return true;
  }
  color[v] = -1;
  return false;
}
}  // namespace

int exact_chromatic_number(const QuotientGraph& g, int vertex_cap) {
  if (g.r > vertex_cap)
    throw cap_exceeded("exact_chromatic_number: graph has " + std::to_string(g.r) +
                           " vertices, cap is " + std::to_string(vertex_cap),
                       static_cast<unsigned long long>(vertex_cap));
  int lo = exact_clique_number(g);
  int hi = greedy_coloring_bound(g);
  for (int k = lo; k < hi; ++k) {
    std::vector<int> color(g.r, -1);
    if (k_colorable(g, k, color, 0)) return k;
  }
  return hi;
}

}  // namespace permdiff
