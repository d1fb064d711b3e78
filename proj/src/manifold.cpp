#include "statgeo/manifold.hpp"

#include "statgeo/errors.hpp"
#include "statgeo/indefinite.hpp"
#include "statgeo/sampling.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace statgeo {

void ChartedManifold::validate(const std::vector<Vec>& points, double rank_tol) const {
  for (const Vec& x : points) {
    Mat g = metric_at(x);
    Signature s = signature(SymBilinearForm::symmetrized(g), rank_tol);
    if (s.zero > 0) throw SingularMetric(name + ": metric is degenerate inside the chart");
    if (s.minus != index_q)
      throw IndexChange(name + ": metric index " + std::to_string(s.minus) + " differs from " +
                        std::to_string(index_q));
  }
}

Mat metric_inverse(const Mat& g) {
  Eigen::FullPivLU<Mat> lu(g);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) throw SingularMetric("metric is not invertible");
  return lu.inverse();
}

std::vector<Mat> metric_partials(const MetricField& g, const Vec& x, const FdOptions& fd) {
  std::vector<Mat> out;
  out.reserve(x.size());
  for (int a = 0; a < x.size(); ++a) out.push_back(partial_derivative(g, x, a, fd));
  return out;
}

Tensor3 levi_civita_at(const MetricField& g, const Vec& x, const FdOptions& fd) {
  const int n = static_cast<int>(x.size());
  std::vector<Mat> dg = metric_partials(g, x, fd);
  Mat ginv = metric_inverse(g(x));
  Tensor3 first(n);  // Gamma_{l i j}
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double v = 0.5 * (dg[i](l, j) + dg[j](l, i) - dg[l](i, j));
        first(l, i, j) = v;
        first(l, j, i) = v;
      }
  return first.raised(ginv);
}

AffineConnection levi_civita(const ChartedManifold& m, const FdOptions& fd) {
  MetricField g = m.metric_at;
  return {[g, fd](const Vec& x) { return levi_civita_at(g, x, fd); }, true};
}

Tensor3 dual_gamma_at(const MetricField& g, const Tensor3& gamma, const Vec& x,
                      const FdOptions& fd) {
  const int n = static_cast<int>(x.size());
  std::vector<Mat> dg = metric_partials(g, x, fd);
  Mat gx = g(x);
  Tensor3 low(n);  // g_jm Gamma*^m_ik stored as (j, i, k)
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        double v = dg[i](j, k);
        for (int m = 0; m < n; ++m) v -= gamma(m, i, j) * gx(m, k);
        low(j, i, k) = v;
      }
  return low.raised(metric_inverse(gx));
}

AffineConnection dual_connection(const ChartedManifold& m, const AffineConnection& nabla,
                                 const FdOptions& fd) {
  MetricField g = m.metric_at;
  Tensor3Field gam = nabla.gamma_at;
  return {[g, gam, fd](const Vec& x) { return dual_gamma_at(g, gam(x), x, fd); }, true};
}

StatisticalStructure make_statistical_structure(const ChartedManifold& m, AffineConnection nabla,
                                                const FdOptions& fd) {
  StatisticalStructure s;
  s.manifold = m;
  s.levi_civita = levi_civita(m, fd);
  s.nabla_star = dual_connection(m, nabla, fd);
  s.nabla = std::move(nabla);
  Tensor3Field gam = s.nabla.gamma_at;
  Tensor3Field lc = s.levi_civita.gamma_at;
  s.K_at = [gam, lc](const Vec& x) { return gam(x) - lc(x); };
  return s;
}

double max_symmetry_defect(const Tensor3& c) {
  const int n = c.dim();
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int d = 0; d < n; ++d) {
        double v = c(a, b, d);
        worst = std::max({worst, std::abs(v - c(b, a, d)), std::abs(v - c(a, d, b)),
                          std::abs(v - c(d, b, a))});
      }
  return worst;
}

StatisticalStructure connection_from_K(const ChartedManifold& m, CubicFormField c,
                                       const FdOptions& fd,
                                       const std::vector<Vec>& check_points) {
  std::vector<Vec> pts = check_points;
  if (pts.empty()) pts.push_back(m.domain.center());
  for (const Vec& x : pts) {
    Tensor3 cx = c(x);
    if (max_symmetry_defect(cx) > 1e-9 * std::max(1.0, cx.max_abs()))
      throw AsymmetricInput("cubic form is not totally symmetric");
  }

  StatisticalStructure s;
  s.manifold = m;
  s.levi_civita = levi_civita(m, fd);
  MetricField g = m.metric_at;
  Tensor3Field kf = [g, c](const Vec& x) { return c(x).raised(metric_inverse(g(x))); };
  Tensor3Field lc = s.levi_civita.gamma_at;
  s.K_at = kf;
  s.nabla = {[lc, kf](const Vec& x) { return lc(x) + kf(x); }, true};
  s.nabla_star = {[lc, kf](const Vec& x) { return lc(x) - kf(x); }, true};
  return s;
}

CubicFormField constant_vector_cubic(const MetricField& g, const Vec& v) {
  return [g, v](const Vec& x) {
    Mat gx = g(x);
    Vec vl = gx * v;
    const int n = static_cast<int>(x.size());
    Tensor3 c(n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int d = 0; d < n; ++d) c(a, b, d) = gx(a, b) * vl(d) + gx(a, d) * vl(b) + gx(b, d) * vl(a);
    return c;
  };
}

CubicFormField random_symmetric_cubic(int dim, unsigned long long seed, int degree, double scale) {
  UnitRng rng(seed);
  auto u = [](UnitRng& r) { return r.uniform(-1.0, 1.0); };
  int nlin = degree >= 1 ? dim : 0;
  int nquad = degree >= 2 ? dim * (dim + 1) / 2 : 0;
  struct Poly {
    double c0;
    std::vector<double> lin;
    std::vector<double> quad;
  };
  std::vector<Poly> polys;
  for (int a = 0; a < dim; ++a)
    for (int b = a; b < dim; ++b)
      for (int d = b; d < dim; ++d) {
        Poly p;
        p.c0 = scale * u(rng);
        for (int i = 0; i < nlin; ++i) p.lin.push_back(scale * u(rng));
        for (int i = 0; i < nquad; ++i) p.quad.push_back(scale * u(rng));
        polys.push_back(std::move(p));
      }
  return [dim, polys](const Vec& x) {
    Tensor3 c(dim);
    size_t t = 0;
    for (int a = 0; a < dim; ++a)
      for (int b = a; b < dim; ++b)
        for (int d = b; d < dim; ++d) {
          const Poly& p = polys[t++];
          double v = p.c0;
          for (size_t i = 0; i < p.lin.size(); ++i) v += p.lin[i] * x(i);
          size_t q = 0;
          for (int i = 0; i < dim && !p.quad.empty(); ++i)
            for (int j = i; j < dim; ++j) v += p.quad[q++] * x(i) * x(j);
          int idx[3] = {a, b, d};
          std::sort(idx, idx + 3);
          do {
            c(idx[0], idx[1], idx[2]) = v;
          } while (std::next_permutation(idx, idx + 3));
        }
    return c;
  };
}

ChartedManifold random_metric_manifold(int dim, int index, unsigned long long seed) {
  UnitRng rng(seed);
  auto u = [](UnitRng& r) { return r.uniform(-1.0, 1.0); };
  auto rand_mat = [&](double s) {
    Mat m(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) m(i, j) = s * u(rng);
    return m;
  };
  Mat l0 = Mat::Identity(dim, dim) + rand_mat(0.2 / dim);
  std::vector<Mat> la;
  for (int a = 0; a < dim; ++a) la.push_back(rand_mat(0.1 / dim));
  Vec eta = Vec::Ones(dim);
  for (int i = 0; i < index; ++i) eta(i) = -1.0;

  ChartedManifold m;
  m.dim = dim;
  m.index_q = index;
  m.domain = {Vec::Constant(dim, -0.5), Vec::Constant(dim, 0.5)};
  m.name = "random_metric";
  m.metric_at = [l0, la, eta](const Vec& x) {
    Mat l = l0;
    for (size_t a = 0; a < la.size(); ++a) l += x(a) * la[a];
    return Mat(l.transpose() * eta.asDiagonal() * l);
  };
  return m;
}

double nabla_metric(const MetricField& g, const AffineConnection& c, const Vec& x, const Vec& X,
                    const Vec& Y, const Vec& Z, const FdOptions& fd) {
  Mat dg = directional_derivative(g, x, X, fd);
  Mat gx = g(x);
  Tensor3 gam = c.gamma(x);
  return Y.dot(dg * Z) - gam.contract(X, Y).dot(gx * Z) - Y.dot(gx * gam.contract(X, Z));
}

double codazzi_residual(const StatisticalStructure& s, const Vec& x, const Vec& X, const Vec& Y,
                        const Vec& Z, const FdOptions& fd) {
  const MetricField& g = s.manifold.metric_at;
  return std::abs(nabla_metric(g, s.nabla, x, X, Y, Z, fd) -
                  nabla_metric(g, s.nabla, x, Y, X, Z, fd));
}

double nabla_g_compat_residual(const StatisticalStructure& s, const Vec& x, const Vec& X,
                               const Vec& Y, const Vec& Z, const FdOptions& fd) {
  const MetricField& g = s.manifold.metric_at;
  double ng = nabla_metric(g, s.nabla, x, X, Y, Z, fd);
  double nsg = nabla_metric(g, s.nabla_star, x, X, Y, Z, fd);
  double gk = s.K_at(x).contract(X, Y).dot(g(x) * Z);
  return std::max({std::abs(ng + nsg), std::abs(ng + 2.0 * gk), std::abs(ng - nsg + 4.0 * gk),
                   std::abs(nsg - 2.0 * gk)});
}

Tensor4 curvature_at(const AffineConnection& c, const Vec& x, const FdOptions& fd) {
  const int n = static_cast<int>(x.size());
  Tensor3 gam = c.gamma(x);
  std::vector<Tensor3> dgam;
  for (int i = 0; i < n; ++i) dgam.push_back(partial_derivative(c.gamma_at, x, i, fd));
  Tensor4 r(n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double v = dgam[i](k, j, l) - dgam[j](k, i, l);
          for (int m = 0; m < n; ++m) v += gam(k, i, m) * gam(m, j, l) - gam(k, j, m) * gam(m, i, l);
          r(k, l, i, j) = v;
        }
  return r;
}

CurvatureTensor curvature(const AffineConnection& c, const FdOptions& fd) { return {c, fd}; }

Tensor4 statistical_curvature_at(const StatisticalStructure& s, const Vec& x,
                                 const FdOptions& fd) {
  Tensor4 r = curvature_at(s.nabla, x, fd);
  r += curvature_at(s.nabla_star, x, fd);
  r *= 0.5;
  return r;
}

Tensor4 nabla_K_at(const StatisticalStructure& s, const Vec& x, const FdOptions& fd) {
  const int n = static_cast<int>(x.size());
  Tensor3 k = s.K_at(x);
  Tensor3 gam = s.nabla.gamma(x);
  Tensor4 out(n);
  for (int a = 0; a < n; ++a) {
    Tensor3 dk = partial_derivative(s.K_at, x, a, fd);
    for (int kk = 0; kk < n; ++kk)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double v = dk(kk, i, j);
          for (int l = 0; l < n; ++l)
            v += gam(kk, a, l) * k(l, i, j) - gam(l, a, i) * k(kk, l, j) - gam(l, a, j) * k(kk, i, l);
          out(kk, a, i, j) = v;
        }
  }
  return out;
}

Tensor4 hessian_curvature_at(const StatisticalStructure& s, const Vec& x, const FdOptions& fd) {
  Tensor4 q = nabla_K_at(s, x, fd);
  q *= -1.0;
  return q;
}

void ConstantFitter::add(const Vec& target, const Vec& model) {
  for (Eigen::Index i = 0; i < target.size(); ++i) add(target(i), model(i));
}

void ConstantFitter::add(double target, double model) {
  t_.push_back(target);
  m_.push_back(model);
}

ConstantFitter::Result ConstantFitter::finish() const {
  Result r;
  r.count = t_.size();
  double tm = 0.0, mm = 0.0;
  for (size_t i = 0; i < t_.size(); ++i) {
    tm += t_[i] * m_[i];
    mm += m_[i] * m_[i];
    r.model_norm = std::max(r.model_norm, std::abs(m_[i]));
  }
  r.c = mm > 0.0 ? tm / mm : 0.0;
  for (size_t i = 0; i < t_.size(); ++i)
    r.deviation = std::max(r.deviation, std::abs(t_[i] - r.c * m_[i]));
  return r;
}

void add_constant_curvature_samples(ConstantFitter& fitter, const Tensor4& r, const Mat& g) {
  OrthonormalFrame f = orthonormal_frame(SymBilinearForm::symmetrized(g));
  Mat einv = f.vectors.inverse();
  const int n = static_cast<int>(g.rows());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        Vec ea = f.vectors.col(a), eb = f.vectors.col(b), ec = f.vectors.col(c);
        Vec model = eb.dot(g * ec) * ea - ea.dot(g * ec) * eb;
        fitter.add(Vec(einv * r.apply(ea, eb, ec)), Vec(einv * model));
      }
}

void add_hessian_samples(ConstantFitter& fitter, const Tensor4& nabla_k, const Mat& g) {
  OrthonormalFrame f = orthonormal_frame(SymBilinearForm::symmetrized(g));
  Mat einv = f.vectors.inverse();
  const int n = static_cast<int>(g.rows());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        Vec ea = f.vectors.col(a), eb = f.vectors.col(b), ec = f.vectors.col(c);
        // (nabla_{E_a} K)(E_b, E_c); storage index l carries the derivative direction
        Vec target = nabla_k.apply(eb, ec, ea);
        Vec model = -0.5 * (ea.dot(g * eb) * ec + ea.dot(g * ec) * eb);
        fitter.add(Vec(einv * target), Vec(einv * model));
      }
}

double lie_derivative_metric(const MetricField& g, const VectorField& X, const Vec& x,
                             const Vec& Y, const Vec& Z, const FdOptions& fd) {
  Vec xv = X(x);
  Mat gx = g(x);
  Mat dg = directional_derivative(g, x, xv, fd);
  Vec dxy = directional_derivative(X, x, Y, fd);
  Vec dxz = directional_derivative(X, x, Z, fd);
  return Y.dot(dg * Z) + dxy.dot(gx * Z) + Y.dot(gx * dxz);
}

double lie_derivative_metric(const ChartedManifold& m, const VectorField& X, const Vec& x,
                             const Vec& Y, const Vec& Z, const FdOptions& fd) {
  return lie_derivative_metric(m.metric_at, X, x, Y, Z, fd);
}

}  // namespace statgeo
