#include "doctest.h"

#include "statgeo/errors.hpp"
#include "statgeo/manifold.hpp"
#include "statgeo/sampling.hpp"
#include "statgeo/statistical_models.hpp"

#include <cmath>

using namespace statgeo;

namespace {

ChartedManifold flat(std::initializer_list<double> signs) {
  Vec d(static_cast<Eigen::Index>(signs.size()));
  int i = 0, q = 0;
  for (double s : signs) {
    d(i++) = s;
    q += s < 0;
  }
  ChartedManifold m;
  m.dim = static_cast<int>(d.size());
  m.index_q = q;
  m.domain = {Vec::Constant(m.dim, -1.0), Vec::Constant(m.dim, 1.0)};
  Mat g = d.asDiagonal();
  m.metric_at = [g](const Vec&) { return g; };
  m.name = "flat";
  return m;
}

// Hand-derived Christoffel symbols of y^{-2} delta on the upper half-space,
// y the last coordinate:
// Gamma^k_ij = -(1/y)(delta_ik delta_j,y + delta_jk delta_i,y - delta_ij delta_k,y)
Tensor3 hyperbolic_gamma(const Vec& x) {
  const int n = static_cast<int>(x.size());
  const int t = n - 1;
  const double y = x(t);
  Tensor3 g(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        g(k, i, j) = -((i == k && j == t) + (j == k && i == t) - (i == j && k == t)) / y;
  return g;
}

std::vector<Vec> unit_vectors(int n) {
  std::vector<Vec> out;
  for (int i = 0; i < n; ++i) out.push_back(Vec::Unit(n, i));
  return out;
}

double max_tensor_diff(const Tensor3& a, const Tensor3& b) { return (a - b).max_abs(); }

}  // namespace

TEST_CASE("Levi-Civita connection") {
  SUBCASE("flat metric has vanishing symbols") {
    ChartedManifold m = flat({-1, 1, 1, 1});
    CHECK(levi_civita(m).gamma(Vec::Zero(4)).max_abs() == 0.0);
  }
  SUBCASE("upper half-space matches the hand-derived symbols") {
    ChartedManifold m = upper_half_space_manifold(2);
    AffineConnection lc = levi_civita(m);
    Vec at(3);
    at << 0, 0, 1;
    Tensor3 g = lc.gamma(at);
    CHECK(g(2, 0, 0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(g(2, 1, 1) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(g(2, 2, 2) == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(g(0, 0, 2) == doctest::Approx(-1.0).epsilon(1e-10));
    for (const Vec& x : sample_lattice(m.domain, 20, 1))
      CHECK(max_tensor_diff(lc.gamma(x), hyperbolic_gamma(x)) < 1e-9);
  }
  SUBCASE("second-order scheme converges quadratically") {
    ChartedManifold m = upper_half_space_manifold(1);
    Vec x(2);
    x << 0.2, 0.7;
    FdOptions coarse{1e-2, FdScheme::Central2}, fine{5e-3, FdScheme::Central2};
    double e1 = max_tensor_diff(levi_civita_at(m.metric_at, x, coarse), hyperbolic_gamma(x));
    double e2 = max_tensor_diff(levi_civita_at(m.metric_at, x, fine), hyperbolic_gamma(x));
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
  }
}

TEST_CASE("dual connections") {
  ChartedManifold m = random_metric_manifold(3, 1, 11);
  AffineConnection lc = levi_civita(m);
  AffineConnection lc_dual = dual_connection(m, lc);
  for (const Vec& x : sample_lattice(m.domain, 10, 2))
    CHECK(max_tensor_diff(lc.gamma(x), lc_dual.gamma(x)) < 1e-9);

  StatisticalStructure s = connection_from_K(m, random_symmetric_cubic(3, 4, 2));
  AffineConnection d = dual_connection(m, s.nabla);
  for (const Vec& x : sample_lattice(m.domain, 10, 3)) {
    CHECK(max_tensor_diff(d.gamma(x), s.nabla_star.gamma(x)) < 1e-9);
    CHECK(max_tensor_diff(d.gamma(x), lc.gamma(x) - s.K_at(x)) < 1e-9);
  }
}

TEST_CASE("duality is an involution on random statistical structures") {
  for (int trial = 0; trial < 50; ++trial) {
    const int dim = 2 + trial % 3;
    const int index = trial % 2;
    ChartedManifold m = random_metric_manifold(dim, index, 100 + trial);
    StatisticalStructure s = connection_from_K(m, random_symmetric_cubic(dim, 200 + trial, 2));
    AffineConnection dd = dual_connection(m, dual_connection(m, s.nabla));
    for (const Vec& x : sample_lattice(m.domain, 3, trial))
      CHECK(max_tensor_diff(dd.gamma(x), s.nabla.gamma(x)) < 1e-8);
  }
}

TEST_CASE("difference tensor identities") {
  ChartedManifold m = random_metric_manifold(4, 1, 7);
  StatisticalStructure s = connection_from_K(m, random_symmetric_cubic(4, 8, 2));
  for (const Vec& x : sample_lattice(m.domain, 10, 5)) {
    Tensor3 k = s.K_at(x);
    Tensor3 half = 0.5 * (s.nabla.gamma(x) - s.nabla_star.gamma(x));
    CHECK(max_tensor_diff(k, half) < 1e-9);
    CHECK(max_tensor_diff(k, s.nabla.gamma(x) - levi_civita(m).gamma(x)) < 1e-9);
    CHECK(max_symmetry_defect(k.lowered(m.metric(x))) < 1e-9);
    for (int a = 0; a < 4; ++a)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(std::abs(k(a, i, j) - k(a, j, i)) < 1e-12);
  }
}

TEST_CASE("asymmetric cubic forms are rejected") {
  ChartedManifold m = flat({1, 1});
  CubicFormField c = [](const Vec&) {
    Tensor3 t(2);
    t(0, 0, 1) = 1.0;
    return t;
  };
  CHECK_THROWS_AS(connection_from_K(m, c), AsymmetricInput);
}

TEST_CASE("Codazzi residual") {
  ChartedManifold m = flat({-1, 1, 1, 1});
  Vec v = Vec::Unit(4, 1);
  StatisticalStructure s = connection_from_K(m, constant_vector_cubic(m.metric_at, v));
  StatisticalStructure trivial = make_statistical_structure(m, levi_civita(m));
  auto dirs = unit_vectors(4);
  UnitRng rng(9);
  double worst = 0.0, worst_trivial = 0.0;
  for (int t = 0; t < 20; ++t) {
    Vec x(4), X(4), Y(4), Z(4);
    for (int i = 0; i < 4; ++i) {
      x(i) = rng.uniform(-1, 1);
      X(i) = rng.uniform(-1, 1);
      Y(i) = rng.uniform(-1, 1);
      Z(i) = rng.uniform(-1, 1);
    }
    worst = std::max(worst, codazzi_residual(s, x, X, Y, Z));
    worst_trivial = std::max(worst_trivial, codazzi_residual(trivial, x, X, Y, Z));
  }
  CHECK(worst <= 1e-10);
  CHECK(worst_trivial <= 1e-10);

  StatisticalStructure bad = s;
  Tensor3Field orig = s.nabla.gamma_at;
  bad.nabla.gamma_at = [orig](const Vec& x) {
    Tensor3 g = orig(x);
    g(0, 1, 1) += 0.1;
    return g;
  };
  double corrupted = 0.0;
  for (auto& X : dirs)
    for (auto& Y : dirs)
      for (auto& Z : dirs) corrupted = std::max(corrupted, codazzi_residual(bad, Vec::Zero(4), X, Y, Z));
  CHECK(corrupted > 1e-3);
}

TEST_CASE("metric compatibility identities") {
  ChartedManifold m = flat({-1, 1, 1, 1});
  StatisticalStructure trivial = make_statistical_structure(m, levi_civita(m));
  StatisticalStructure ck = connection_from_K(m, constant_vector_cubic(m.metric_at, Vec::Unit(4, 2)));
  StatisticalStructure uhs = upper_half_space_fixture(1);
  auto d4 = unit_vectors(4), d2 = unit_vectors(2);
  Vec x4 = Vec::Constant(4, 0.3);
  Vec y(2);
  y << 0.0, 1.0;
  double w_triv = 0, w_ck = 0, w_uhs = 0;
  for (auto& X : d4)
    for (auto& Y : d4)
      for (auto& Z : d4) {
        w_triv = std::max(w_triv, nabla_g_compat_residual(trivial, x4, X, Y, Z));
        w_ck = std::max(w_ck, nabla_g_compat_residual(ck, x4, X, Y, Z));
      }
  for (auto& X : d2)
    for (auto& Y : d2)
      for (auto& Z : d2) w_uhs = std::max(w_uhs, nabla_g_compat_residual(uhs, y, X, Y, Z));
  CHECK(w_triv == 0.0);
  CHECK(w_ck <= 1e-9);
  CHECK(w_uhs <= 1e-8);
}

TEST_CASE("curvature") {
  SUBCASE("flat connection") {
    ChartedManifold m = flat({-1, 1, 1});
    CHECK(curvature(levi_civita(m)).at(Vec::Zero(3)).max_abs() == 0.0);
  }
  SUBCASE("hyperbolic metric has constant curvature -1") {
    ChartedManifold m = upper_half_space_manifold(2);
    AffineConnection lc = levi_civita(m);
    ConstantFitter fit;
    for (const Vec& x : sample_lattice(m.domain, 30, 4))
      add_constant_curvature_samples(fit, curvature_at(lc, x, {}), m.metric(x));
    auto r = fit.finish();
    CHECK(r.c == doctest::Approx(-1.0).epsilon(1e-8));
    CHECK(r.deviation < 1e-6);
  }
  SUBCASE("antisymmetry and pair symmetry of a Levi-Civita curvature") {
    ChartedManifold m = random_metric_manifold(3, 1, 21);
    AffineConnection lc = levi_civita(m);
    auto d = unit_vectors(3);
    Vec x = Vec::Constant(3, 0.1);
    Tensor4 r = curvature_at(lc, x, {});
    Mat g = m.metric(x);
    double anti = 0, pair = 0;
    for (auto& X : d)
      for (auto& Y : d)
        for (auto& Z : d) {
          anti = std::max(anti, (r.apply(X, Y, Z) + r.apply(Y, X, Z)).cwiseAbs().maxCoeff());
          for (auto& U : d)
            pair = std::max(pair, std::abs(U.dot(g * r.apply(X, Y, Z)) - X.dot(g * r.apply(U, Z, Y))));
        }
    CHECK(anti < 1e-12);
    CHECK(pair < 1e-7);
  }
  SUBCASE("second-order scheme converges quadratically") {
    ChartedManifold m = upper_half_space_manifold(1);
    Vec x(2);
    x << 0.1, 0.8;
    // exact value: R(e_x, e_y)e_y = -(g(e_y,e_y) e_x) = -e_x / y^2 at constant curvature -1
    auto err = [&](double h) {
      FdOptions fd{h, FdScheme::Central2};
      AffineConnection lc{[m, fd](const Vec& p) { return levi_civita_at(m.metric_at, p, fd); }, true};
      Vec r = curvature_at(lc, x, fd).apply(Vec::Unit(2, 0), Vec::Unit(2, 1), Vec::Unit(2, 1));
      return std::abs(r(0) + 1.0 / (x(1) * x(1)));
    };
    CHECK(err(2e-3) / err(1e-3) == doctest::Approx(4.0).epsilon(0.1));
  }
}

TEST_CASE("statistical curvature identities on a constant-K flat structure") {
  ChartedManifold m = flat({-1, 1, 1, 1});
  StatisticalStructure s = connection_from_K(m, constant_vector_cubic(m.metric_at, Vec::Unit(4, 1)));
  auto d = unit_vectors(4);
  Vec x = Vec::Constant(4, -0.2);
  Tensor4 st = statistical_curvature_at(s, x, {});
  Mat g = m.metric(x);
  double anti = 0, pair = 0, bianchi = 0;
  for (auto& X : d)
    for (auto& Y : d)
      for (auto& Z : d) {
        anti = std::max(anti, (st.apply(X, Y, Z) + st.apply(Y, X, Z)).cwiseAbs().maxCoeff());
        bianchi = std::max(bianchi, (st.apply(X, Y, Z) + st.apply(Y, Z, X) + st.apply(Z, X, Y))
                                        .cwiseAbs()
                                        .maxCoeff());
        for (auto& U : d)
          pair = std::max(pair, std::abs(U.dot(g * st.apply(X, Y, Z)) - X.dot(g * st.apply(U, Z, Y))));
      }
  CHECK(anti <= 1e-9);
  CHECK(pair <= 1e-9);
  CHECK(bianchi <= 1e-8);
  CHECK(st.max_abs() > 0.1);  // not trivially zero

  StatisticalStructure trivial = make_statistical_structure(upper_half_space_manifold(1),
                                                            levi_civita(upper_half_space_manifold(1)));
  Vec y(2);
  y << 0.3, 1.2;
  Tensor4 a = statistical_curvature_at(trivial, y, {});
  Tensor4 b = curvature_at(trivial.levi_civita, y, {});
  b *= -1.0;
  CHECK((a + b).max_abs() < 1e-8);
}

TEST_CASE("Hessian curvature") {
  SUBCASE("upper half-space has constant Hessian curvature 4") {
    StatisticalStructure s = upper_half_space_fixture(2);
    ConstantFitter fit;
    for (const Vec& x : sample_lattice(s.manifold.domain, 50, 8))
      add_hessian_samples(fit, nabla_K_at(s, x, {}), s.manifold.metric(x));
    auto r = fit.finish();
    CHECK(r.c == doctest::Approx(4.0).epsilon(1e-8));
    CHECK(r.deviation <= 1e-6);
  }
  SUBCASE("trivial structure") {
    ChartedManifold m = flat({1, 1});
    StatisticalStructure s = make_statistical_structure(m, levi_civita(m));
    CHECK(hessian_curvature_at(s, Vec::Zero(2), {}).max_abs() == 0.0);
  }
  SUBCASE("constant-K flat structure against the hand expansion") {
    ChartedManifold m = flat({-1, 1, 1, 1});
    Vec v = Vec::Unit(4, 1);
    StatisticalStructure s = connection_from_K(m, constant_vector_cubic(m.metric_at, v));
    Mat g = m.metric(Vec::Zero(4));
    Vec vl = g * v;
    // K^k_ij = delta^k_i v_j + delta^k_j v_i + g_ij V^k, connection = K (flat LC)
    Tensor3 k(4);
    for (int a = 0; a < 4; ++a)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) k(a, i, j) = (a == i) * vl(j) + (a == j) * vl(i) + g(i, j) * v(a);
    Tensor4 hand(4);
    for (int kk = 0; kk < 4; ++kk)
      for (int a = 0; a < 4; ++a)
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) {
            double val = 0;
            for (int l = 0; l < 4; ++l)
              val += k(kk, a, l) * k(l, i, j) - k(l, a, i) * k(kk, l, j) - k(l, a, j) * k(kk, i, l);
            hand(kk, a, i, j) = -val;
          }
    for (const Vec& x : sample_lattice(m.domain, 5, 1)) {
      Tensor4 q = hessian_curvature_at(s, x, {});
      Tensor4 diff = q;
      diff *= -1.0;
      CHECK((diff + hand).max_abs() < 1e-10);
    }
  }
}

TEST_CASE("Lie derivative of the metric") {
  ChartedManifold e2 = flat({1, 1});
  auto d = unit_vectors(2);
  VectorField translation = [](const Vec&) { return Vec::Unit(2, 0); };
  VectorField rotation = [](const Vec& p) {
    Vec v(2);
    v << -p(1), p(0);
    return v;
  };
  Vec x(2);
  x << 0.3, -0.7;
  for (auto& Y : d)
    for (auto& Z : d) {
      CHECK(std::abs(lie_derivative_metric(e2, translation, x, Y, Z)) < 1e-14);
      CHECK(std::abs(lie_derivative_metric(e2, rotation, x, Y, Z)) < 1e-12);
    }
  ChartedManifold e1 = flat({1});
  VectorField dilation = [](const Vec& p) { return p; };
  Vec one = Vec::Constant(1, 0.4);
  CHECK(lie_derivative_metric(e1, dilation, one, Vec::Ones(1), Vec::Ones(1)) ==
        doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("chart validation") {
  ChartedManifold m = random_metric_manifold(3, 1, 2);
  CHECK_NOTHROW(m.validate(sample_lattice(m.domain, 50, 1)));
  ChartedManifold wrong = flat({1, 1});
  wrong.metric_at = [](const Vec& p) {
    Mat g = Mat::Identity(2, 2);
    g(0, 0) = p(0);
    return g;
  };
  std::vector<Vec> neg{Vec::Constant(2, -0.5)}, zero{Vec::Zero(2)};
  CHECK_THROWS_AS(wrong.validate(neg), IndexChange);
  CHECK_THROWS_AS(wrong.validate(zero), SingularMetric);
}
