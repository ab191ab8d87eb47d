#include "subclust/kernels.hpp"
#include "subclust/solvers.hpp"

namespace subclust {

GraphLaplacian build_knn_laplacian(const DataMatrix& x, int k_graph, double epsilon) {
  const Index n = x.samples();
  if (k_graph < 1 || k_graph >= n) {
    throw ConfigError("k_graph=" + std::to_string(k_graph) + " must lie in 1.." +
                      std::to_string(n - 1));
  }
  if (!(epsilon > 0.0)) throw ConfigError("SMR epsilon must be positive");

  const auto nbrs = kernels::omp::knn_columns(x.values(), k_graph);
  GraphLaplacian g;
  g.w_graph = Matrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index r = 0; r < nbrs.rows(); ++r) {
      const Index i = nbrs(r, j);
      g.w_graph(i, j) = 1.0;
      g.w_graph(j, i) = 1.0;
    }
  }
  g.degree = g.w_graph.rowwise().sum();
  g.l_hat = -g.w_graph;
  g.l_hat.diagonal() += g.degree + Vector::Constant(n, epsilon);
  return g;
}

}  // namespace subclust
