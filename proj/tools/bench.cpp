// Serial vs OpenMP kernel timings. Usage: subclust_bench [n] [reps]
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>

#include "subclust/kernels.hpp"

using namespace subclust;
namespace k = subclust::kernels;

namespace {

Matrix gaussian(std::mt19937_64& rng, Index r, Index c) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(r, c);
  for (Index j = 0; j < c; ++j)
    for (Index i = 0; i < r; ++i) m(i, j) = n(rng);
  return m;
}

template <class F>
double best_ms(int reps, F&& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void row(const char* name, double serial, double omp) {
  std::printf("%-24s%12.3f%12.3f%10.2fx\n", name, serial, omp, serial / omp);
}

}  // namespace

int main(int argc, char** argv) {
  const Index n = argc > 1 ? std::atol(argv[1]) : 1000;
  const int reps = argc > 2 ? std::atoi(argv[2]) : 5;
  std::mt19937_64 rng(1);
  const Matrix points = gaussian(rng, 50, n);
  const Matrix c = gaussian(rng, n, n);
  const Matrix gram = c.transpose() * c;
  const Vector norms = c.colwise().norm().transpose();
  const Matrix embedded = gaussian(rng, n, 10);
  const Matrix centers = gaussian(rng, 10, 10);

  std::printf("n=%ld, threads=%d, best of %d (ms)\n", long(n), k::max_threads(), reps);
  std::printf("%-24s%12s%12s%11s\n", "kernel", "serial", "omp", "speedup");
  row("knn_columns(k=10)", best_ms(reps, [&] { k::serial::knn_columns(points, 10); }),
      best_ms(reps, [&] { k::omp::knn_columns(points, 10); }));
  row("normalized_power", best_ms(reps, [&] { k::serial::normalized_power(gram, norms, 4.0); }),
      best_ms(reps, [&] { k::omp::normalized_power(gram, norms, 4.0); }));
  row("keep_top_k(k=8)", best_ms(reps, [&] { k::serial::keep_top_k_per_column(c, 8); }),
      best_ms(reps, [&] { k::omp::keep_top_k_per_column(c, 8); }));
  std::vector<int> labels;
  Vector dist2;
  row("assign_nearest(k=10)",
      best_ms(reps, [&] { k::serial::assign_nearest(embedded, centers, labels, dist2); }),
      best_ms(reps, [&] { k::omp::assign_nearest(embedded, centers, labels, dist2); }));
}
