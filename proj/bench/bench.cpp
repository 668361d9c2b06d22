// Serial reference vs OpenMP kernel on the parallel code paths. Both runs
// must produce identical results; the ratio is reported per kernel.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

#include "theta_ran/harness.hpp"
#include "theta_ran/homology.hpp"
#include "theta_ran/theta.hpp"

using namespace theta_ran;

namespace {

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

bool compare(const char* name, int reps, const std::function<std::string(Execution)>& kernel) {
  std::string serial_out, parallel_out;
  const double ts = best_of(reps, [&] { serial_out = kernel(Execution::serial); });
  const double tp = best_of(reps, [&] { parallel_out = kernel(Execution::parallel); });
  const bool same = serial_out == parallel_out;
  std::printf("%-28s serial %9.4fs  parallel %9.4fs  speedup %5.2fx  %s\n", name, ts, tp, ts / tp,
              same ? "identical" : "MISMATCH");
  return same;
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
  std::printf("threads: %d\n", omp_get_max_threads());
  bool ok = true;
  const Tree src = Tree::parse("[3]([2]([1],[2]),[1]([2]),[1]([1]))");
  const Tree tgt = Tree::parse("[3]([2]([2],[1]),[2]([1],[2]),[1]([2]))");
  ok &= compare("hom enumeration (all)", reps, [&](Execution e) {
    std::string s;
    for (const auto& m : enumerate_theta_hom(src, tgt, HomFilter::all, {}, e)) s += m.to_string();
    return s;
  });
  const FiniteCategoryView cat = build_category(CategoryKind::nord, 2, 4);
  ok &= compare("nerve assembly nord(2,4)", reps, [&](Execution e) {
    const ChainComplex cx = nerve_chain_complex(cat, 3, {}, e);
    std::string s;
    for (auto n : cx.sizes) s += std::to_string(n) + " ";
    for (const auto& b : cx.boundaries) s += std::to_string(b.nonzeros()) + " ";
    return s;
  });
  const ChainComplex cx = nerve_chain_complex(cat, 3);
  ok &= compare("SNF per degree nord(2,4)", reps, [&](Execution e) {
    std::string s;
    for (const auto& g : homology_of_complex(cx, 2, e).groups()) s += g + ";";
    return s;
  });
  ok &= compare("suite fan-out (roundtrip)", reps, [&](Execution e) {
    SuiteOptions opt;
    opt.exec = e;
    return report_to_json(run_suite("roundtrip", Json{{"leaves", 7}, {"dead_ends", 1}}, opt)).dump();
  });
  return ok ? 0 : 1;
}
