// Times the serial reference kernels against their OpenMP variants on
// random residue data and reports the speedup.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mmfp/kernels.hpp"

using clk = std::chrono::steady_clock;

namespace {

double ms_since(clk::time_point t0) {
  return std::chrono::duration<double, std::milli>(clk::now() - t0).count();
}

std::vector<std::uint64_t> random_residues(std::size_t n, std::uint64_t p, std::uint32_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> v(n);
  for (auto& x : v) x = rng() % p;
  return v;
}

template <class F>
double best_of(int reps, F&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    auto t0 = clk::now();
    fn();
    double t = ms_since(t0);
    if (t < best) best = t;
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t p = 7;
  std::size_t series_n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 8192;
  std::size_t mat_n = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 384;
  int reps = 3;

#ifdef _OPENMP
  std::printf("OpenMP: %d threads\n", omp_get_max_threads());
#else
  std::printf("OpenMP: not enabled\n");
#endif

  {
    auto a = random_residues(series_n, p, 1);
    auto b = random_residues(series_n, p, 2);
    std::vector<std::uint64_t> c1(series_n), c2(series_n);
    double ts = best_of(reps, [&] {
      mmfp::kernels::cauchy_product_serial(a.data(), a.size(), b.data(), b.size(), c1.data(),
                                           c1.size(), p);
    });
    double tp = best_of(reps, [&] {
      mmfp::kernels::cauchy_product_parallel(a.data(), a.size(), b.data(), b.size(), c2.data(),
                                             c2.size(), p);
    });
    std::printf("cauchy_product   n=%-6zu serial %8.2f ms   parallel %8.2f ms   x%.2f  %s\n",
                series_n, ts, tp, ts / tp, c1 == c2 ? "match" : "MISMATCH");
  }

  {
    std::size_t rows = mat_n, cols = 2 * mat_n;
    auto m0 = random_residues(rows * cols, p, 3);
    auto m1 = m0, m2 = m0;
    // normalize a pivot row so both variants eliminate against the same data
    for (std::size_t j = 0; j < cols; ++j) m1[j] = m2[j] = (j == 0);
    double ts = best_of(reps, [&] {
      auto w = m1;
      mmfp::kernels::eliminate_column_serial(w.data(), rows, cols, 0, 0, p);
    });
    double tp = best_of(reps, [&] {
      auto w = m2;
      mmfp::kernels::eliminate_column_parallel(w.data(), rows, cols, 0, 0, p);
    });
    auto w1 = m1, w2 = m2;
    mmfp::kernels::eliminate_column_serial(w1.data(), rows, cols, 0, 0, p);
    mmfp::kernels::eliminate_column_parallel(w2.data(), rows, cols, 0, 0, p);
    std::printf("eliminate_column %zux%-5zu serial %8.2f ms   parallel %8.2f ms   x%.2f  %s\n",
                rows, cols, ts, tp, ts / tp, w1 == w2 ? "match" : "MISMATCH");
  }

  {
    auto a = random_residues(mat_n * mat_n, p, 4);
    auto b = random_residues(mat_n * mat_n, p, 5);
    std::vector<std::uint64_t> c1(mat_n * mat_n), c2(mat_n * mat_n);
    double ts = best_of(reps, [&] {
      mmfp::kernels::matmul_serial(a.data(), b.data(), c1.data(), mat_n, mat_n, mat_n, p);
    });
    double tp = best_of(reps, [&] {
      mmfp::kernels::matmul_parallel(a.data(), b.data(), c2.data(), mat_n, mat_n, mat_n, p);
    });
    std::printf("matmul           n=%-6zu serial %8.2f ms   parallel %8.2f ms   x%.2f  %s\n",
                mat_n, ts, tp, ts / tp, c1 == c2 ? "match" : "MISMATCH");
  }
  return 0;
}
