// Serial reference kernels vs their OpenMP counterparts, wall-clock table.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "permdiff/capacity.hpp"
#include "permdiff/constructions.hpp"
#include "permdiff/solver.hpp"
#include "permdiff/verify.hpp"

using namespace permdiff;

namespace {

double timed(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void row(const char* name, double serial, double two, double four) {
  std::printf("%-44s %9.3fs %9.3fs %9.3fs %7.2fx\n", name, serial, two, four,
              four > 0 ? serial / four : 0.0);
}

}  // namespace

int main() {
  std::printf("%-44s %10s %10s %10s %8s\n", "kernel", "serial", "2 threads", "4 threads",
              "speedup");

  {
    const DistanceSet D = DistanceSet::finite({1}).complement();
    const PermFamily F = construct_theorem1(8);
    const double s = timed([&] { verify_family_serial(F, D); });
    const double t2 = timed([&] { verify_family(F, D, 2); });
    const double t4 = timed([&] { verify_family(F, D, 4); });
    row("verify_family, 2520 members x n=8", s, t2, t4);
  }

  {
    const PermFamily F = construct_hookup(9);
    const DistanceSet D = F.claimed_D();
    const double s = timed([&] { verify_family_serial(F, D); });
    const double t2 = timed([&] { verify_family(F, D, 2); });
    const double t4 = timed([&] { verify_family(F, D, 4); });
    row("verify_family, 8640 members x n=9", s, t2, t4);
  }

  {
    const DistanceSet E = DistanceSet::valuation(1, 2);
    PermFamily slice(16, E, "slice");
    const PermFamily full = construct_valuation(16, 1, 2);
    for (std::size_t i = 0; i < 2000; ++i)
      slice.add(full.member(i * (full.size() / 2000)));
    slice.seal();
    const double s = timed([&] { strong_certificate_violation(slice, E, 1); });
    const double t2 = timed([&] { strong_certificate_violation(slice, E, 2); });
    const double t4 = timed([&] { strong_certificate_violation(slice, E, 4); });
    row("certificate scan, 2000 members x n=16", s, t2, t4);
  }

  {
    const DistanceSet D = DistanceSet::finite({1}).complement();
    const double s = timed([&] { build_conflict_graph_serial(7, D); });
    const double t2 = timed([&] { build_conflict_graph(7, D, kDefaultVertexCap, 2); });
    const double t4 = timed([&] { build_conflict_graph(7, D, kDefaultVertexCap, 4); });
    row("conflict graph build, 5040 vertices", s, t2, t4);
  }

  {
    const DistanceSet D = DistanceSet::finite({1}).complement();
    const ConflictGraph g = build_conflict_graph(5, D);
    SolveBudget b1, b2, b4;
    b2.workers = 2;
    b4.workers = 4;
    const double s = timed([&] { max_clique(g, b1); });
    const double t2 = timed([&] { max_clique(g, b2); });
    const double t4 = timed([&] { max_clique(g, b4); });
    row("max clique, 120-vertex conflict graph", s, t2, t4);
  }

  return 0;
}
