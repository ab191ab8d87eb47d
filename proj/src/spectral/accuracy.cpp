#include <limits>

#include "subclust/spectral.hpp"

namespace subclust {

std::vector<int> solve_assignment(const Matrix& cost) {
  if (cost.rows() != cost.cols()) throw ConfigError("solve_assignment: cost must be square");
  const Index n = cost.rows();
  const double inf = std::numeric_limits<double>::infinity();
  // Shortest augmenting path with row/column potentials, 1-based with a
  // virtual column 0.
  std::vector<double> u(std::size_t(n + 1), 0.0), v(std::size_t(n + 1), 0.0);
  std::vector<Index> match(std::size_t(n + 1), 0), way(std::size_t(n + 1), 0);
  for (Index row = 1; row <= n; ++row) {
    match[0] = row;
    Index col0 = 0;
    std::vector<double> minv(std::size_t(n + 1), inf);
    std::vector<bool> used(std::size_t(n + 1), false);
    do {
      used[std::size_t(col0)] = true;
      const Index i0 = match[std::size_t(col0)];
      double delta = inf;
      Index col1 = 0;
      for (Index j = 1; j <= n; ++j) {
        if (used[std::size_t(j)]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[std::size_t(i0)] - v[std::size_t(j)];
        if (cur < minv[std::size_t(j)]) {
          minv[std::size_t(j)] = cur;
          way[std::size_t(j)] = col0;
        }
        if (minv[std::size_t(j)] < delta) {
          delta = minv[std::size_t(j)];
          col1 = j;
        }
      }
      for (Index j = 0; j <= n; ++j) {
        if (used[std::size_t(j)]) {
          u[std::size_t(match[std::size_t(j)])] += delta;
          v[std::size_t(j)] -= delta;
        } else {
          minv[std::size_t(j)] -= delta;
        }
      }
      col0 = col1;
    } while (match[std::size_t(col0)] != 0);
    do {
      const Index col1 = way[std::size_t(col0)];
      match[std::size_t(col0)] = match[std::size_t(col1)];
      col0 = col1;
    } while (col0 != 0);
  }
  std::vector<int> assignment(std::size_t(n), -1);
  for (Index j = 1; j <= n; ++j) {
    assignment[std::size_t(match[std::size_t(j)] - 1)] = static_cast<int>(j - 1);
  }
  return assignment;
}

double clustering_accuracy(const LabelVector& pred, const LabelVector& truth) {
  if (pred.size() != truth.size()) {
    throw DataError("clustering_accuracy: length mismatch (" + std::to_string(pred.size()) +
                    " vs " + std::to_string(truth.size()) + ")");
  }
  if (pred.size() == 0) throw DataError("clustering_accuracy: empty labels");
  const Index k = std::max(pred.clusters(), truth.clusters());
  Matrix agree = Matrix::Zero(k, k);
  for (std::size_t i = 0; i < pred.size(); ++i) agree(pred[i], truth[i]) += 1.0;
  const auto assignment = solve_assignment(-agree);
  double matched = 0.0;
  for (Index r = 0; r < k; ++r) matched += agree(r, assignment[std::size_t(r)]);
  return 100.0 * matched / double(pred.size());
}

}  // namespace subclust
