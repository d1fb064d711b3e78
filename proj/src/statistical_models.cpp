#include "statgeo/statistical_models.hpp"

#include "statgeo/errors.hpp"

#include <Eigen/Eigenvalues>

#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace statgeo {

namespace {

GaussHermiteRule build_rule(int n) {
  // Golub-Welsch for the nodes, Newton polish, Christoffel numbers for the
  // weights (relative accuracy in the tails, unlike squared eigenvector entries).
  Mat jac = Mat::Zero(n, n);
  for (int k = 1; k < n; ++k) jac(k, k - 1) = jac(k - 1, k) = std::sqrt(static_cast<double>(k));
  Eigen::SelfAdjointEigenSolver<Mat> es(jac, Eigen::EigenvaluesOnly);
  GaussHermiteRule rule;
  rule.nodes = es.eigenvalues();
  rule.weights = Vec(n);
  const double mass = std::sqrt(2.0 * std::numbers::pi);
  for (int i = 0; i < n; ++i) {
    double z = rule.nodes(i);
    double sum = 0.0;
    for (int it = 0; it < 3; ++it) {
      // orthonormal recurrence p_{k+1} = (z p_k - sqrt(k) p_{k-1}) / sqrt(k+1)
      double pm = 0.0, p = 1.0;
      sum = 1.0;
      for (int k = 0; k < n - 1; ++k) {
        double pn = (z * p - std::sqrt(static_cast<double>(k)) * pm) / std::sqrt(k + 1.0);
        pm = p;
        p = pn;
        sum += p * p;
      }
      double pn = (z * p - std::sqrt(n - 1.0) * pm) / std::sqrt(static_cast<double>(n));
      double dpn = std::sqrt(static_cast<double>(n)) * p;
      if (it < 2) z -= pn / dpn;
    }
    rule.nodes(i) = z;
    rule.weights(i) = mass / sum;
  }
  return rule;
}

std::vector<Vec> score_at_nodes(const ParametricDensityFamily& f, const Vec& theta,
                                const std::vector<double>& xs, const FdOptions& fd) {
  std::vector<Vec> out;
  out.reserve(xs.size());
  for (double x : xs) {
    auto lp = [&](const Vec& t) { return f.log_density(x, t); };
    Vec s(f.param_dim);
    for (int i = 0; i < f.param_dim; ++i) s(i) = partial_derivative(lp, theta, i, fd);
    out.push_back(std::move(s));
  }
  return out;
}

struct Nodes {
  std::vector<double> xs;
  std::vector<double> ws;  // already include density and Jacobian
};

Nodes nodes_for(const ParametricDensityFamily& f, const Vec& theta, int n) {
  const GaussHermiteRule& rule = gauss_hermite(n);
  auto [loc, scale] = f.standardize(theta);
  Nodes out;
  for (int i = 0; i < n; ++i) {
    double z = rule.nodes(i);
    double x = loc + scale * z;
    double lp = f.log_density(x, theta);
    if (!std::isfinite(lp))
      throw NonFiniteDensity(f.name + ": log density is not finite at a quadrature node");
    out.xs.push_back(x);
    out.ws.push_back(rule.weights(i) * scale * std::exp(0.5 * z * z + lp));
  }
  return out;
}

Mat fisher_once(const ParametricDensityFamily& f, const Vec& theta, int n,
                const QuadratureOptions& q) {
  Nodes nd = nodes_for(f, theta, n);
  std::vector<Vec> sc = score_at_nodes(f, theta, nd.xs, q.score);
  Mat g = Mat::Zero(f.param_dim, f.param_dim);
  for (size_t a = 0; a < nd.xs.size(); ++a) g += nd.ws[a] * sc[a] * sc[a].transpose();
  return 0.5 * (g + g.transpose());
}

Tensor3 alpha_once(const ParametricDensityFamily& f, double alpha, const Vec& theta, int n,
                   const QuadratureOptions& q) {
  const int d = f.param_dim;
  Nodes nd = nodes_for(f, theta, n);
  std::vector<Vec> sc = score_at_nodes(f, theta, nd.xs, q.score);
  Tensor3 out(d);
  for (size_t a = 0; a < nd.xs.size(); ++a) {
    const double x = nd.xs[a];
    auto score = [&](const Vec& t) {
      Vec s(d);
      auto lp = [&](const Vec& u) { return f.log_density(x, u); };
      for (int i = 0; i < d; ++i) s(i) = partial_derivative(lp, t, i, q.second);
      return s;
    };
    Mat hess(d, d);
    for (int j = 0; j < d; ++j) hess.col(j) = partial_derivative(score, theta, j, q.second);
    hess = 0.5 * (hess + hess.transpose());
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
          double v = nd.ws[a] * (hess(i, j) + 0.5 * (1.0 - alpha) * (sc[a](i) * sc[a](j))) * sc[a](k);
          out(k, i, j) += v;
          if (j != i) out(k, j, i) += v;
        }
  }
  return out;
}

}  // namespace

const GaussHermiteRule& gauss_hermite(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GaussHermiteRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussHermiteRule>(build_rule(n));
  return *slot;
}

double expectation(const ParametricDensityFamily& f, const Vec& theta,
                   const std::function<double(double)>& integrand, int nodes) {
  Nodes nd = nodes_for(f, theta, nodes);
  double s = 0.0;
  for (size_t a = 0; a < nd.xs.size(); ++a) s += nd.ws[a] * integrand(nd.xs[a]);
  return s;
}

Mat fisher_metric(const ParametricDensityFamily& f, const Vec& theta, const QuadratureOptions& q) {
  Mat g = fisher_once(f, theta, q.nodes, q);
  if (q.check_convergence) {
    Mat g2 = fisher_once(f, theta, 2 * q.nodes, q);
    double change = (g2 - g).cwiseAbs().maxCoeff();
    if (change > q.convergence_tol)
      throw QuadratureDivergence(f.name + ": Fisher metric changed by " + std::to_string(change) +
                                 " under node doubling");
  }
  return g;
}

Tensor3 alpha_connection_first_kind(const ParametricDensityFamily& f, double alpha,
                                    const Vec& theta, const QuadratureOptions& q) {
  Tensor3 t = alpha_once(f, alpha, theta, q.nodes, q);
  if (q.check_convergence) {
    Tensor3 t2 = alpha_once(f, alpha, theta, 2 * q.nodes, q);
    double change = (t2 - t).max_abs();
    if (change > q.convergence_tol)
      throw QuadratureDivergence(f.name + ": alpha-connection changed by " +
                                 std::to_string(change) + " under node doubling");
  }
  return t;
}

Tensor3 alpha_connection(const ParametricDensityFamily& f, double alpha, const Vec& theta,
                         const QuadratureOptions& q) {
  Mat g = fisher_metric(f, theta, q);
  Mat ginv;
  try {
    ginv = metric_inverse(g);
  } catch (const SingularMetric&) {
    throw SingularFisherMetric(f.name + ": Fisher metric is singular");
  }
  return alpha_connection_first_kind(f, alpha, theta, q).raised(ginv);
}

ScoreCheck score_check(const ParametricDensityFamily& f, const Vec& theta,
                       const QuadratureOptions& q) {
  Nodes nd = nodes_for(f, theta, q.nodes);
  std::vector<Vec> sc = score_at_nodes(f, theta, nd.xs, q.score);
  ScoreCheck out;
  out.score_mean = Vec::Zero(f.param_dim);
  for (size_t a = 0; a < nd.xs.size(); ++a) {
    out.normalization += nd.ws[a];
    out.score_mean += nd.ws[a] * sc[a];
  }
  return out;
}

ChartedManifold fisher_manifold(const ParametricDensityFamily& f, const QuadratureOptions& q) {
  QuadratureOptions inner = q;
  inner.check_convergence = false;
  ChartedManifold m;
  m.dim = f.param_dim;
  m.index_q = 0;
  m.domain = f.param_box;
  m.name = f.name + "_fisher";
  m.metric_at = [f, inner](const Vec& theta) { return fisher_metric(f, theta, inner); };
  return m;
}

StatisticalStructure alpha_structure(const ParametricDensityFamily& f, double alpha,
                                     const FdOptions& fd, const QuadratureOptions& q) {
  QuadratureOptions inner = q;
  inner.check_convergence = false;
  ChartedManifold m = fisher_manifold(f, q);
  AffineConnection nabla{
      [f, alpha, inner](const Vec& theta) { return alpha_connection(f, alpha, theta, inner); },
      true};
  StatisticalStructure s = make_statistical_structure(m, std::move(nabla), fd);
  s.description = f.name + " alpha=" + std::to_string(alpha);
  return s;
}

ParametricDensityFamily normal_family_fixture() {
  ParametricDensityFamily f;
  f.name = "normal_family";
  f.param_dim = 2;
  f.log_density = [](double x, const Vec& t) {
    const double z = (x - t(0)) / t(1);
    return -0.5 * z * z - std::log(t(1)) - 0.5 * std::log(2.0 * std::numbers::pi);
  };
  f.standardize = [](const Vec& t) { return std::pair<double, double>(t(0), t(1)); };
  f.param_box = {Vec::Map(std::array<double, 2>{-1.0, 0.5}.data(), 2),
                 Vec::Map(std::array<double, 2>{1.0, 2.0}.data(), 2)};
  return f;
}

ChartedManifold upper_half_space_manifold(int n) {
  ChartedManifold m;
  m.dim = n + 1;
  m.index_q = 0;
  m.name = "upper_half_space";
  m.domain.lower = Vec::Constant(n + 1, -1.0);
  m.domain.upper = Vec::Constant(n + 1, 1.0);
  m.domain.lower(n) = 0.5;
  m.domain.upper(n) = 2.0;
  m.metric_at = [n](const Vec& y) {
    return Mat(Mat::Identity(n + 1, n + 1) / (y(n) * y(n)));
  };
  return m;
}

StatisticalStructure upper_half_space_fixture(int n, const FdOptions& fd) {
  ChartedManifold m = upper_half_space_manifold(n);
  AffineConnection nabla{[n](const Vec& y) {
                           Tensor3 g(n + 1);
                           const double inv = 1.0 / y(n);
                           for (int i = 0; i < n; ++i) g(n, i, i) = 2.0 * inv;
                           g(n, n, n) = inv;
                           return g;
                         },
                         true};
  StatisticalStructure s = make_statistical_structure(m, std::move(nabla), fd);
  s.description = "upper_half_space n=" + std::to_string(n);
  return s;
}

}  // namespace statgeo
