#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "support.hpp"

using namespace subclust;

namespace {

DataMatrix random_unit(std::uint64_t seed, Index d, Index n) {
  std::mt19937_64 rng(seed);
  return DataMatrix(support::unit_columns(support::gaussian(rng, d, n)));
}

Dataset three_subspaces(std::uint64_t seed) {
  SyntheticSpec spec;
  spec.num_subspaces = 3;
  spec.subspace_dim = 4;
  spec.ambient_dim = 30;
  spec.points_per_subspace = 20;
  spec.seed = seed;
  return preprocess(generate_synthetic(spec), {});
}

}  // namespace

TEST_SUITE("solvers") {

TEST_CASE("soft threshold") {
  CHECK(soft_threshold(3.0, 1.0) == 2.0);
  CHECK(soft_threshold(-0.5, 1.0) == 0.0);
  CHECK(soft_threshold(-2.5, 1.0) == -1.5);
  CHECK(soft_threshold(0.7, 0.0) == 0.7);
  Matrix m(1, 3);
  m << 3.0, -0.5, -4.0;
  Matrix expect(1, 3);
  expect << 2.0, 0.0, -3.0;
  CHECK(soft_threshold(m, 1.0) == expect);
  CHECK_THROWS_AS(soft_threshold(m, -1.0), ConfigError);
}

TEST_CASE("singular value threshold") {
  CHECK(singular_value_threshold(Matrix::Zero(3, 3), 0.5).isZero(0.0));
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 5.0;
  d(1, 1) = 1.0;
  Matrix expect = Matrix::Zero(2, 2);
  expect(0, 0) = 3.0;
  CHECK(support::max_abs_equal(singular_value_threshold(d, 2.0), expect, 1e-12));
  std::mt19937_64 rng(1);
  const Matrix r = support::gaussian(rng, 4, 4);
  CHECK(support::max_abs_equal(singular_value_threshold(r, 0.0), r, 1e-10));
  Matrix nan = r;
  nan(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(singular_value_threshold(nan, 1.0), NumericalError);
}

TEST_CASE("column shrink") {
  Matrix m(2, 3);
  m << 3, 0.1, 0, 4, 0.1, 0;
  const Matrix s = column_shrink(m, 1.0);
  CHECK(s(0, 0) == doctest::Approx(2.4));
  CHECK(s(1, 0) == doctest::Approx(3.2));
  CHECK(s.col(1).isZero(0.0));
  CHECK(s.col(2).isZero(0.0));
}

TEST_CASE("kNN Laplacian on two separated pairs") {
  Matrix x(2, 4);
  x << 0.0, 0.001, 10.0, 10.001, 0.0, 0.0, 0.0, 0.0;
  const GraphLaplacian g = build_knn_laplacian(DataMatrix(x), 1, 0.01);
  Matrix expect = Matrix::Zero(4, 4);
  expect(0, 1) = expect(1, 0) = expect(2, 3) = expect(3, 2) = 1.0;
  CHECK(g.w_graph == expect);
}

TEST_CASE("kNN Laplacian invariants against a brute-force graph") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DataMatrix x = random_unit(seed, 5, 20);
    const int k = 1 + int(seed % 5);
    const double eps = 0.01 * double(seed + 1);
    const GraphLaplacian g = build_knn_laplacian(x, k, eps);
    CHECK(g.w_graph == support::knn_graph(x.values(), k));
    CHECK(support::max_abs_equal(g.l_hat, g.l_hat.transpose(), 1e-12));
    const Matrix lap = g.l_hat - eps * Matrix::Identity(20, 20);
    CHECK(lap.rowwise().sum().cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(support::max_abs_equal(g.degree, g.w_graph.rowwise().sum(), 0.0));
    Eigen::SelfAdjointEigenSolver<Matrix> eig(g.l_hat);
    CHECK(eig.eigenvalues().minCoeff() >= eps - 1e-10);
  }
  CHECK_THROWS_AS(build_knn_laplacian(random_unit(1, 3, 5), 5, 0.01), ConfigError);
  CHECK_THROWS_AS(build_knn_laplacian(random_unit(1, 3, 5), 0, 0.01), ConfigError);
}

TEST_CASE("LSR matches the dense normal-equation oracle") {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 50; ++rep) {
    const Index d = 3 + Index(rep % 6);
    const Index n = 6 + Index(rep % 9);
    const double lambda = std::pow(10.0, -3.0 + double(rep % 5));
    const Matrix x = support::gaussian(rng, d, n);
    auto cfg = SolverConfig::defaults(SolverKind::lsr);
    cfg.lambda = lambda;
    const CoefficientMatrix c = solve_lsr(DataMatrix(x), cfg);
    CHECK(support::lsr_normal_residual(x, c.values, lambda) <= 1e-8);
    CHECK(support::max_abs_equal(c.values, support::lsr_dense(x, lambda), 1e-8));
    CHECK(c.report.converged);
  }
  std::mt19937_64 small(8);
  const Matrix x = support::gaussian(small, 5, 8);
  auto cfg = SolverConfig::defaults(SolverKind::lsr);
  cfg.lambda = 0.1;
  CHECK(support::lsr_normal_residual(x, solve_lsr(DataMatrix(x), cfg).values, 0.1) <= 1e-8);
}

TEST_CASE("LSR scaling and huge lambda") {
  const DataMatrix x = random_unit(4, 6, 10);
  auto cfg = SolverConfig::defaults(SolverKind::lsr);
  cfg.lambda = 0.3;
  const Matrix c1 = solve_lsr(x, cfg).values;
  cfg.lambda = 1.2;
  const Matrix c2 = solve_lsr(DataMatrix(2.0 * x.values()), cfg).values;
  CHECK(support::max_abs_equal(c1, c2, 1e-8));

  cfg.lambda = 1e12;
  const Matrix g = x.values().transpose() * x.values();
  CHECK(solve_lsr(x, cfg).values.norm() <= 1e-6 * g.norm());
}

TEST_CASE("LSR with zero diagonal is a per-column optimum") {
  std::mt19937_64 rng(31);
  const Matrix x = support::gaussian(rng, 6, 9);
  const double lambda = 0.05;
  auto cfg = SolverConfig::defaults(SolverKind::lsr);
  cfg.lambda = lambda;
  cfg.diag_constraint = true;
  const Matrix c = solve_lsr(DataMatrix(x), cfg).values;
  CHECK(c.diagonal().isZero(0.0));
  // Oracle: for column i solve the ridge problem over the other columns.
  for (Index i = 0; i < 9; ++i) {
    Matrix others(6, 8);
    for (Index j = 0, t = 0; j < 9; ++j) {
      if (j != i) others.col(t++) = x.col(j);
    }
    const Matrix a = others.transpose() * others + lambda * Matrix::Identity(8, 8);
    const Vector ci = a.partialPivLu().solve(others.transpose() * x.col(i));
    for (Index j = 0, t = 0; j < 9; ++j) {
      if (j != i) CHECK(std::abs(c(j, i) - ci[t++]) <= 1e-9);
    }
  }
}

TEST_CASE("SMR stationarity") {
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 10; ++rep) {
    const Matrix x = support::gaussian(rng, 6, 10);
    auto cfg = SolverConfig::defaults(SolverKind::smr);
    cfg.lambda = rep == 0 ? 1.0 : std::pow(2.0, double(rep * 2 - 8));
    const CoefficientMatrix c = solve_smr(DataMatrix(x), cfg);
    const GraphLaplacian g = build_knn_laplacian(DataMatrix(x), cfg.k_graph, cfg.epsilon);
    CHECK(support::smr_stationarity(x, c.values, g.l_hat, cfg.lambda) <= 1e-6);
    CHECK(c.report.converged);
  }
}

TEST_CASE("SMR returns a local minimum under random perturbations") {
  std::mt19937_64 rng(43);
  const Matrix x = support::gaussian(rng, 6, 10);
  const auto cfg = SolverConfig::defaults(SolverKind::smr);
  const Matrix c = solve_smr(DataMatrix(x), cfg).values;
  const GraphLaplacian g = build_knn_laplacian(DataMatrix(x), cfg.k_graph, cfg.epsilon);
  const double base = smr_objective(x, c, g.l_hat, cfg.lambda);
  for (int t = 0; t < 100; ++t) {
    Matrix delta = support::gaussian(rng, 10, 10);
    delta *= 1e-3 / delta.norm();
    CHECK(base <= smr_objective(x, c + delta, g.l_hat, cfg.lambda));
  }
}

TEST_CASE("SMR grouping effect for duplicated columns") {
  // Coefficient columns of duplicated points coincide when the kNN graph
  // also treats the two copies alike (w_i and w_j equal up to the swap).
  auto swap_symmetric = [](const Matrix& w, Index i, Index j) {
    std::vector<Index> perm(std::size_t(w.rows()));
    std::iota(perm.begin(), perm.end(), Index{0});
    std::swap(perm[std::size_t(i)], perm[std::size_t(j)]);
    return support::permute_symmetric(w, perm) == w;
  };
  std::mt19937_64 rng(47);
  int checked = 0;
  for (int rep = 0; rep < 30; ++rep) {
    Matrix x = support::gaussian(rng, 6, 12);
    x.col(11) = x.col(3);
    const auto cfg = SolverConfig::defaults(SolverKind::smr);
    const GraphLaplacian g = build_knn_laplacian(DataMatrix(x), cfg.k_graph, cfg.epsilon);
    if (!swap_symmetric(g.w_graph, 3, 11)) continue;
    ++checked;
    const Matrix c = solve_smr(DataMatrix(x), cfg).values;
    CHECK((c.col(3) - c.col(11)).norm() / c.col(3).norm() <= 1e-3);
  }
  CHECK(checked >= 5);

  // Complete graph: always symmetric.
  Matrix x = support::gaussian(rng, 6, 10);
  x.col(9) = x.col(0);
  auto cfg = SolverConfig::defaults(SolverKind::smr);
  cfg.k_graph = 9;
  const Matrix c = solve_smr(DataMatrix(x), cfg).values;
  CHECK((c.col(0) - c.col(9)).norm() / c.col(0).norm() <= 1e-3);
}

TEST_CASE("SSC keeps a zero diagonal and reaches feasibility") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const DataMatrix x = random_unit(100 + seed, 8, 12);
    auto cfg = SolverConfig::defaults(SolverKind::ssc);
    cfg.max_iter = 5000;
    const CoefficientMatrix c = solve_ssc(x, cfg);
    CHECK(c.values.diagonal().cwiseAbs().maxCoeff() == 0.0);
    REQUIRE(c.report.converged);
    CHECK(c.report.primal_residual <= 2e-4);
    CHECK(c.report.error_l1.has_value());
    CHECK(*c.report.noise_fro == 0.0);
    CHECK(c.values.allFinite());
  }
  // The default iteration cap may stop early; the diagonal is still exact.
  const CoefficientMatrix capped = solve_ssc(random_unit(7, 8, 12), SolverConfig::defaults(SolverKind::ssc));
  CHECK(capped.report.iterations <= 200);
  CHECK(capped.values.diagonal().cwiseAbs().maxCoeff() == 0.0);
  CHECK(capped.report.converged == (capped.report.primal_residual <= 2e-4));
}

TEST_CASE("SSC is subspace preserving on independent subspaces") {
  SyntheticSpec spec;
  spec.num_subspaces = 2;
  spec.subspace_dim = 2;
  spec.ambient_dim = 10;
  spec.points_per_subspace = 15;
  spec.seed = 3;
  const Dataset ds = preprocess(generate_synthetic(spec), {});
  const Matrix c = solve_ssc(ds.matrix, SolverConfig::defaults(SolverKind::ssc)).values;
  double cross = 0.0;
  for (Index j = 0; j < 30; ++j) {
    for (Index i = 0; i < 30; ++i) {
      if (ds.truth[std::size_t(i)] != ds.truth[std::size_t(j)]) cross = std::max(cross, std::abs(c(i, j)));
    }
  }
  CHECK(cross <= 1e-6);
}

TEST_CASE("SSC objective trace settles") {
  // ADMM iterates are not descent steps, so the trace may rise briefly; rises
  // after iteration 5 must stay below 2% and the run must end lower than it
  // was at iteration 5.
  for (std::uint64_t seed : {7u, 8u}) {
    SyntheticSpec spec;
    spec.seed = seed;
    const Dataset ds = preprocess(generate_synthetic(spec), {});
    auto cfg = SolverConfig::defaults(SolverKind::ssc);
    cfg.max_iter = 2000;
    const auto report = solve_ssc(ds.matrix, cfg).report;
    const auto& t = report.objective_trace;
    REQUIRE(t.size() > 6);
    CHECK(report.converged);
    for (std::size_t i = 5; i + 1 < t.size(); ++i) CHECK(t[i + 1] <= t[i] * 1.02);
    CHECK(t.back() <= t[5]);
  }
}

TEST_CASE("SSC with the dense noise term") {
  const DataMatrix x = random_unit(9, 8, 14);
  auto cfg = SolverConfig::defaults(SolverKind::ssc);
  cfg.lambda_z = 50.0;
  cfg.max_iter = 5000;
  const CoefficientMatrix c = solve_ssc(x, cfg);
  CHECK(c.report.converged);
  CHECK(c.values.diagonal().cwiseAbs().maxCoeff() == 0.0);
  CHECK(*c.report.noise_fro > 0.0);
  CHECK(support::max_abs_equal(x.values() - x.values() * c.values - c.error,
                               Matrix::Zero(8, 14), 14 * 2e-4 + 2e-4));
}

TEST_CASE("SSC incoherence scale") {
  Matrix x(2, 3);
  x << 1, 0, 1, 0, 1, 1;
  // |x0.x1| = 0, |x0.x2| = 1, |x1.x2| = 1, |x2.x2 excluded|.
  CHECK(ssc_incoherence_scale(x) == 1.0);
  Matrix orth = Matrix::Identity(3, 3);
  CHECK_THROWS_AS(solve_ssc(DataMatrix(orth), SolverConfig::defaults(SolverKind::ssc)), NumericalError);
}

TEST_CASE("LRRSC symmetry and feasibility") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    std::mt19937_64 rng(200 + seed);
    const Matrix x = support::gaussian(rng, 8, 12);
    const CoefficientMatrix c = solve_lrrsc(DataMatrix(x), SolverConfig::defaults(SolverKind::lrrsc));
    CHECK((c.values - c.values.transpose()).cwiseAbs().maxCoeff() <= 1e-10);
    REQUIRE(c.report.converged);
    const double feas = (x - x * c.values - c.error).cwiseAbs().maxCoeff() / x.cwiseAbs().maxCoeff();
    CHECK(feas <= 1e-4);
    Eigen::JacobiSVD<Matrix> svd(c.values);
    CHECK(std::isfinite(svd.singularValues().sum()));
    CHECK(c.report.error_l21.has_value());
  }
}

TEST_CASE("LRRSC dictionary hook") {
  const DataMatrix x = random_unit(5, 6, 10);
  auto cfg = SolverConfig::defaults(SolverKind::lrrsc);
  cfg.dictionary = x.values();
  const Matrix a = solve_lrrsc(x, cfg).values;
  cfg.dictionary.reset();
  CHECK(a == solve_lrrsc(x, cfg).values);
  cfg.dictionary = Matrix::Ones(3, 3);
  CHECK_THROWS_AS(solve_lrrsc(x, cfg), ConfigError);
}

TEST_CASE("off-block mass on the noiseless three-subspace instance") {
  const Dataset ds = three_subspaces(11);
  for (SolverKind kind : {SolverKind::ssc, SolverKind::lsr, SolverKind::smr, SolverKind::lrrsc}) {
    CAPTURE(to_string(kind));
    const Matrix c = solve(kind, ds.matrix, SolverConfig::defaults(kind)).values;
    const double bound = kind == SolverKind::ssc ? 0.05 : 0.35;
    CHECK(support::off_block_mass(c, ds.truth) <= bound);
  }
}

TEST_CASE("solvers are deterministic") {
  const DataMatrix x = random_unit(77, 10, 20);
  for (SolverKind kind : {SolverKind::ssc, SolverKind::lsr, SolverKind::smr, SolverKind::lrrsc}) {
    const auto cfg = SolverConfig::defaults(kind);
    CHECK(solve(kind, x, cfg).values == solve(kind, x, cfg).values);
  }
}

TEST_CASE("solver configuration validation") {
  auto cfg = SolverConfig::defaults(SolverKind::ssc);
  cfg.lambda = 0.0;
  CHECK_THROWS_AS(cfg.validate(SolverKind::ssc), ConfigError);
  cfg = SolverConfig::defaults(SolverKind::lrrsc);
  cfg.penalty_growth = 1.0;
  CHECK_THROWS_AS(cfg.validate(SolverKind::lrrsc), ConfigError);
  cfg = SolverConfig::defaults(SolverKind::smr);
  cfg.epsilon = -1.0;
  CHECK_THROWS_AS(cfg.validate(SolverKind::smr), ConfigError);
  CHECK(parse_solver_kind("lrrsc") == SolverKind::lrrsc);
  CHECK_THROWS_AS(parse_solver_kind("lrr"), ConfigError);
  CHECK(to_string(SolverKind::smr) == "smr");
}

}  // TEST_SUITE
