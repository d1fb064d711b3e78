#include "statgeo/lightlike.hpp"

#include "statgeo/errors.hpp"

#include <cmath>
#include <span>

namespace statgeo {

namespace {

const FramePlan& unfrozen() {
  static const FramePlan empty;
  return empty;
}

Mat take_columns(const Mat& m, const std::vector<int>& cols) {
  Mat out(m.rows(), static_cast<Eigen::Index>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = m.col(cols[j]);
  return out;
}

struct Built {
  BundleFrame frame;
  Mat jacobian;
  Vec x;
  Mat gbar;
};

// Shared by plan creation (plan == nullptr, choices recorded into `record`)
// and replay at other points (choices taken from `plan`).
Built build_frame(const Immersion& im, const Vec& u, const FdOptions& fd, double rank_tol,
                  const FramePlan* plan, FramePlan* record) {
  const int m = im.param_dim;
  const int D = im.ambient.dim;
  if (m <= 0 || m > D) throw FixtureConstructionError(im.name + ": bad parameter dimension");

  Built b;
  b.x = im.point(u);
  b.jacobian = im.jacobian_at(u, fd);
  b.gbar = im.ambient.metric(b.x);
  const Mat& J = b.jacobian;
  SymBilinearForm gbar = SymBilinearForm::symmetrized(b.gbar);
  SymBilinearForm G = SymBilinearForm::symmetrized(J.transpose() * b.gbar * J);

  if (plan) {
    Signature sg = signature(G, rank_tol);
    if (sg.zero != plan->layout.r)
      throw RankNotConstant(im.name + ": induced metric nullity " + std::to_string(sg.zero) +
                            " differs from " + std::to_string(plan->layout.r) +
                            " at the chart center");
  }

  const FramePlan& fz = plan ? *plan : unfrozen();
  try {
    RadicalResult rad = radical_basis_pivoted(G, rank_tol, fz.radical_pivots);
    const int r = rad.basis.count();
    const Mat R = rad.basis.vectors;
    SubspaceBasis xi{D, J * R, {0, 0, r}};

    Mat B = im.screen_generator ? im.screen_generator(u) : Mat(Mat::Identity(m, m));
    SubspaceBasis cand{D, J * B, {}};
    ComplementResult sc = screen_complement_pivoted(
        gbar, cand, xi, rank_tol, fz.screen_choice);
    Mat bsel = take_columns(B, sc.chosen);
    GramSchmidtResult gs = indefinite_gram_schmidt(gbar, J * bsel, rank_tol);

    NullSpace normal = pivoted_null_space(J.transpose() * b.gbar, m,
                                          fz.normal_pivots);
    SubspaceBasis tm_perp{D, normal.basis, {}};
    ComplementResult pc = screen_complement_pivoted(
        gbar, tm_perp, xi, rank_tol, fz.perp_choice);
    GramSchmidtResult gw = indefinite_gram_schmidt(gbar, pc.basis.vectors, rank_tol);

    SubspaceBasis screen{D, gs.vectors, {}};
    SubspaceBasis perp{D, gw.vectors, {}};
    TransversalResult tr = lightlike_transversal_pivoted(
        gbar, xi, screen, perp, rank_tol,
        fz.ltr_pivots,
        fz.ltr_candidates);

    BundleFrame& f = b.frame;
    f.layout = {m, D - m, r};
    f.xi = xi.vectors;
    f.screen = gs.vectors;
    f.ltr = tr.basis.vectors;
    f.perp = gw.vectors;
    f.screen_signs = gs.signs;
    f.perp_signs = gw.signs;
    f.tangent.resize(m, m);
    f.tangent << R, bsel * gs.transform;
    f.full.resize(D, D);
    f.full << f.xi, f.screen, f.ltr, f.perp;
    f.gram = f.full.transpose() * b.gbar * f.full;

    // rows: N^T g, eps e^T g, xi^T g, eps W^T g
    Mat e(D, D);
    e << f.ltr, f.screen * f.screen_signs.asDiagonal(), f.xi, f.perp * f.perp_signs.asDiagonal();
    f.pairing = e.transpose() * b.gbar;

    if (record) {
      record->layout = f.layout;
      record->rank_tol = rank_tol;
      record->radical_pivots = rad.pivots;
      record->screen_choice = sc.chosen;
      record->normal_pivots = normal.pivots;
      record->perp_choice = pc.chosen;
      record->ltr_pivots = tr.null_pivots;
      record->ltr_candidates = tr.candidates;
    }
  } catch (const GramSchmidtBreakdown& e) {
    if (plan) throw PivotBreakdown(im.name + ": frozen frame degenerates: " + e.what());
    throw;
  } catch (const DegenerateComplement& e) {
    if (plan) throw PivotBreakdown(im.name + ": frozen frame degenerates: " + e.what());
    throw;
  }
  return b;
}

// Values of f at the stencil points along every parameter axis, then the
// derivative along each axis.
template <class T, class F>
std::vector<T> axis_derivatives(const F& f, const Vec& u, const FdOptions& fd) {
  const Stencil st = stencil(fd.scheme);
  std::vector<T> out;
  for (Eigen::Index mu = 0; mu < u.size(); ++mu) {
    T acc;
    bool first = true;
    for (size_t k = 0; k < st.offsets.size(); ++k) {
      Vec v = u;
      v(mu) += st.offsets[k] * fd.step;
      T val = f(v);
      if (first) {
        acc = val * (st.weights[k] / fd.step);
        first = false;
      } else {
        acc = acc + val * (st.weights[k] / fd.step);
      }
    }
    out.push_back(acc);
  }
  return out;
}

// Combines axis derivatives into the derivative along the parameter vector d.
Mat along(const std::vector<Mat>& partials, const Vec& d) {
  Mat out = Mat::Zero(partials[0].rows(), partials[0].cols());
  for (size_t mu = 0; mu < partials.size(); ++mu) out += d(static_cast<Eigen::Index>(mu)) * partials[mu];
  return out;
}

struct PhiSet {
  Built built;
  ConnectionMatrices nabla, star, lc;
};

ConnectionMatrices matrices_from(const Built& b, const std::vector<Mat>& dframe, const Tensor3& gamma) {
  const BundleFrame& f = b.frame;
  const int m = f.layout.m;
  const int D = f.layout.dim();
  ConnectionMatrices out;
  for (int p = 0; p < m; ++p) {
    const Vec d = f.tangent.col(p);
    const Vec X = b.jacobian * d;
    Mat raw = along(dframe, d);
    for (int c = 0; c < D; ++c) raw.col(c) += gamma.contract(X, f.full.col(c));
    out.phi.push_back(f.pairing * raw);
    out.raw.push_back(std::move(raw));
  }
  return out;
}

PhiSet phi_set(const Immersion& im, const FramePlan& plan, const StatisticalStructure& s,
               const Vec& u, const FdOptions& fd, bool star_and_lc) {
  PhiSet out;
  out.built = build_frame(im, u, fd, plan.rank_tol, &plan, nullptr);
  auto frame_at = [&](const Vec& v) {
    return Mat(build_frame(im, v, fd, plan.rank_tol, &plan, nullptr).frame.full);
  };
  std::vector<Mat> dframe = axis_derivatives<Mat>(frame_at, u, fd);
  const Vec& x = out.built.x;
  out.nabla = matrices_from(out.built, dframe, s.nabla.gamma(x));
  if (star_and_lc) {
    out.star = matrices_from(out.built, dframe, s.nabla_star.gamma(x));
    out.lc = matrices_from(out.built, dframe, s.levi_civita.gamma(x));
  }
  return out;
}

Mat block_curvature(const ConnectionData& c, const std::vector<Vec>& bracket, int m, int p, int q,
                    int r0, int len) {
  const Mat& wp = c.phi[p];
  const Mat& wq = c.phi[q];
  Mat out = c.dphi[p * m + q].block(r0, r0, len, len) - c.dphi[q * m + p].block(r0, r0, len, len) +
            wp.block(r0, r0, len, len) * wq.block(r0, r0, len, len) -
            wq.block(r0, r0, len, len) * wp.block(r0, r0, len, len);
  const Vec& b = bracket[p * m + q];
  for (int v = 0; v < m; ++v) out -= b(v) * c.phi[v].block(r0, r0, len, len);
  return out;
}

void fill_derivatives(ConnectionData& cd, const std::vector<std::vector<Mat>>& axis_phi,
                      const Mat& tangent, const std::vector<Vec>& bracket, const Tensor4& rbar,
                      const BundleFrame& f, const Mat& jac) {
  const int m = f.layout.m;
  cd.dphi.assign(static_cast<size_t>(m * m), Mat());
  cd.structure.assign(static_cast<size_t>(m * m), Mat());
  cd.ambient.assign(static_cast<size_t>(m * m), Mat());
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q) {
      std::vector<Mat> partials;
      for (const auto& ax : axis_phi) partials.push_back(ax[q]);
      cd.dphi[p * m + q] = along(partials, tangent.col(p));
    }
  const int D = f.layout.dim();
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q) {
      cd.structure[p * m + q] = block_curvature(cd, bracket, m, p, q, 0, D);
      const Vec X = jac * tangent.col(p);
      const Vec Y = jac * tangent.col(q);
      Mat amb(D, D);
      for (int b = 0; b < D; ++b) amb.col(b) = f.pairing * rbar.apply(X, Y, f.full.col(b));
      cd.ambient[p * m + q] = std::move(amb);
    }
}

}  // namespace

Mat Immersion::jacobian_at(const Vec& u, const FdOptions& fd) const {
  if (jacobian) return jacobian(u);
  Mat j(ambient.dim, param_dim);
  for (int mu = 0; mu < param_dim; ++mu) j.col(mu) = partial_derivative(map, u, mu, fd);
  return j;
}

SymBilinearForm induced_metric(const Immersion& im, const Vec& u, const FdOptions& fd) {
  Mat J = im.jacobian_at(u, fd);
  return SymBilinearForm::symmetrized(J.transpose() * im.ambient.metric(im.point(u)) * J);
}

int classify(const Immersion& im, const std::vector<Vec>& samples, double rank_tol,
             const FdOptions& fd) {
  int r = -1;
  for (const Vec& u : samples) {
    Mat J = im.jacobian_at(u, fd);
    Eigen::FullPivLU<Mat> lu(J);
    lu.setThreshold(1e-10);
    if (lu.rank() != im.param_dim)
      throw RankNotConstant(im.name + ": jacobian loses rank at a sample point");
    int z = signature(induced_metric(im, u, fd), rank_tol).zero;
    if (r >= 0 && z != r)
      throw RankNotConstant(im.name + ": induced metric nullity varies between " +
                            std::to_string(r) + " and " + std::to_string(z));
    r = z;
  }
  return r < 0 ? 0 : r;
}

FramePlan make_frame_plan(const Immersion& im, const Vec& u0, double rank_tol,
                          const FdOptions& fd) {
  FramePlan plan;
  build_frame(im, u0, fd, rank_tol, nullptr, &plan);
  return plan;
}

BundleFrame bundle_frame(const Immersion& im, const FramePlan& plan, const Vec& u,
                         const FdOptions& fd) {
  return build_frame(im, u, fd, plan.rank_tol, &plan, nullptr).frame;
}

BundleFrame bundle_frame_field(const Immersion& im, const Vec& u0, const Vec& u, double rank_tol,
                               const FdOptions& fd) {
  return bundle_frame(im, make_frame_plan(im, u0, rank_tol, fd), u, fd);
}

InducedBlocks split_blocks(const Mat& phi, const FrameLayout& l) {
  const int m = l.m, r = l.r, s = l.screen_count(), w = l.perp_count();
  InducedBlocks b;
  b.nabla = phi.block(0, 0, m, m);
  b.h_l = phi.block(m, 0, r, m);
  b.h_s = phi.block(m + r, 0, w, m);
  b.A_N = -phi.block(0, m, m, r);
  b.nabla_l = phi.block(m, m, r, r);
  b.D_s = phi.block(m + r, m, w, r);
  b.A_W = -phi.block(0, m + r, m, w);
  b.D_l = phi.block(m, m + r, r, w);
  b.nabla_s = phi.block(m + r, m + r, w, w);
  b.h_prime = phi.block(0, r, r, s);
  b.A_prime_xi = -phi.block(r, 0, s, r);
  b.nabla_prime = phi.block(r, r, s, s);
  b.nabla_prime_t = phi.block(0, 0, r, r);
  return b;
}

ConnectionMatrices connection_matrices(const Immersion& im, const FramePlan& plan,
                                       const AffineConnection& c, const Vec& u,
                                       const FdOptions& fd) {
  Built b = build_frame(im, u, fd, plan.rank_tol, &plan, nullptr);
  auto frame_at = [&](const Vec& v) {
    return Mat(build_frame(im, v, fd, plan.rank_tol, &plan, nullptr).frame.full);
  };
  std::vector<Mat> dframe = axis_derivatives<Mat>(frame_at, u, fd);
  return matrices_from(b, dframe, c.gamma(b.x));
}

InducedPackage gauss_weingarten(const Immersion& im, const FramePlan& plan,
                                const StatisticalStructure& s, const Vec& u,
                                const FdOptions& fd) {
  PhiSet ps = phi_set(im, plan, s, u, fd, true);
  InducedPackage out;
  out.frame = ps.built.frame;
  const FrameLayout& l = out.frame.layout;
  for (int p = 0; p < l.m; ++p) {
    out.nabla.push_back(split_blocks(ps.nabla.phi[p], l));
    out.star.push_back(split_blocks(ps.star.phi[p], l));
    out.levi_civita.push_back(split_blocks(ps.lc.phi[p], l));
  }
  return out;
}

PointData compute_point_data(const Immersion& im, const FramePlan& plan,
                             const StatisticalStructure& s, const Vec& u,
                             const PointOptions& opt) {
  const FdOptions& fd = opt.fd;
  PhiSet center = phi_set(im, plan, s, u, fd, true);
  PointData d;
  d.u = u;
  d.x = center.built.x;
  d.frame = center.built.frame;
  d.jacobian = center.built.jacobian;
  d.ambient_metric = center.built.gbar;
  const FrameLayout& l = d.frame.layout;
  const int m = l.m;

  d.nabla.phi = center.nabla.phi;
  d.nabla.raw = center.nabla.raw;
  d.star.phi = center.star.phi;
  d.star.raw = center.star.raw;
  d.levi_civita.phi = center.lc.phi;
  d.levi_civita.raw = center.lc.raw;

  // gram, tangent coefficients and induced metric along the chart axes
  auto built_at = [&](const Vec& v) { return build_frame(im, v, fd, plan.rank_tol, &plan, nullptr); };
  const Stencil st = stencil(fd.scheme);
  std::vector<Mat> d_gram(m), d_tangent(m), d_induced(m);
  std::vector<std::vector<Mat>> axis_nabla(m), axis_star(m), axis_lc(m);
  for (int mu = 0; mu < m; ++mu) {
    d_gram[mu] = Mat::Zero(l.dim(), l.dim());
    d_tangent[mu] = Mat::Zero(m, m);
    d_induced[mu] = Mat::Zero(m, m);
    if (opt.curvature) {
      axis_nabla[mu].assign(m, Mat::Zero(l.dim(), l.dim()));
      axis_star[mu].assign(m, Mat::Zero(l.dim(), l.dim()));
      axis_lc[mu].assign(m, Mat::Zero(l.dim(), l.dim()));
    }
    for (size_t k = 0; k < st.offsets.size(); ++k) {
      Vec v = u;
      v(mu) += st.offsets[k] * fd.step;
      const double w = st.weights[k] / fd.step;
      if (opt.curvature) {
        PhiSet ps = phi_set(im, plan, s, v, fd, true);
        const Built& b = ps.built;
        d_gram[mu] += w * b.frame.gram;
        d_tangent[mu] += w * b.frame.tangent;
        d_induced[mu] += w * (b.jacobian.transpose() * b.gbar * b.jacobian);
        for (int q = 0; q < m; ++q) {
          axis_nabla[mu][q] += w * ps.nabla.phi[q];
          axis_star[mu][q] += w * ps.star.phi[q];
          axis_lc[mu][q] += w * ps.lc.phi[q];
        }
      } else {
        Built b = built_at(v);
        d_gram[mu] += w * b.frame.gram;
        d_tangent[mu] += w * b.frame.tangent;
        d_induced[mu] += w * (b.jacobian.transpose() * b.gbar * b.jacobian);
      }
    }
  }

  const Mat& T = d.frame.tangent;
  Eigen::FullPivLU<Mat> tlu(T);
  d.dgram.resize(m);
  for (int p = 0; p < m; ++p) d.dgram[p] = along(d_gram, T.col(p));
  d.bracket.resize(static_cast<size_t>(m * m));
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q) {
      Vec br = along(d_tangent, T.col(p)).col(q) - along(d_tangent, T.col(q)).col(p);
      d.bracket[p * m + q] = tlu.solve(br);
    }

  // (L_X g)_{mu nu} = X^l d_l g_{mu nu} + g_{l nu} d_mu X^l + g_{mu l} d_nu X^l
  const Mat G = d.jacobian.transpose() * d.ambient_metric * d.jacobian;
  for (int i = 0; i < l.r; ++i) {
    const Vec X = T.col(i);
    Mat dX(m, m);  // dX(l, mu) = d_mu X^l
    for (int mu = 0; mu < m; ++mu) dX.col(mu) = d_tangent[mu].col(i);
    Mat L = along(d_induced, X) + dX.transpose() * G + G * dX;
    d.lie_radical.push_back(T.transpose() * L * T);
  }

  if (opt.curvature) {
    const Tensor4 rn = curvature_at(s.nabla, d.x, fd);
    const Tensor4 rs = curvature_at(s.nabla_star, d.x, fd);
    const Tensor4 rl = curvature_at(s.levi_civita, d.x, fd);
    fill_derivatives(d.nabla, axis_nabla, T, d.bracket, rn, d.frame, d.jacobian);
    fill_derivatives(d.star, axis_star, T, d.bracket, rs, d.frame, d.jacobian);
    fill_derivatives(d.levi_civita, axis_lc, T, d.bracket, rl, d.frame, d.jacobian);
    d.ambient_S = (rn + rs) * 0.5;
  }
  return d;
}

Mat induced_curvature(const ConnectionData& c, const std::vector<Vec>& bracket,
                      const FrameLayout& l, int p, int q) {
  return block_curvature(c, bracket, l.m, p, q, 0, l.m);
}

Mat ltr_curvature(const ConnectionData& c, const std::vector<Vec>& bracket, const FrameLayout& l,
                  int p, int q) {
  return block_curvature(c, bracket, l.m, p, q, l.ltr0(), l.r);
}

Mat scr_curvature(const ConnectionData& c, const std::vector<Vec>& bracket, const FrameLayout& l,
                  int p, int q) {
  return block_curvature(c, bracket, l.m, p, q, l.scr0(), l.perp_count());
}

InducedCurvatures induced_curvatures(const PointData& d) {
  const FrameLayout& l = d.frame.layout;
  const int m = l.m;
  InducedCurvatures out;
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q) {
      out.R.push_back(induced_curvature(d.nabla, d.bracket, l, p, q));
      out.R_star.push_back(induced_curvature(d.star, d.bracket, l, p, q));
      out.S.push_back(0.5 * (out.R.back() + out.R_star.back()));
      out.R_l.push_back(ltr_curvature(d.nabla, d.bracket, l, p, q));
      out.R_s.push_back(scr_curvature(d.nabla, d.bracket, l, p, q));
    }
  // Ric(X, Y) = sum_i g(S(X, xi_i)Y, N_i) + sum_alpha eps_alpha g(S(X, e_alpha)Y, e_alpha)
  const Mat& gram = d.frame.gram;
  out.ricci = Mat::Zero(m, m);
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q) {
      double ric = 0.0;
      for (int i = 0; i < l.r; ++i) {
        Vec v = out.S[p * m + i].col(q);
        ric += gram.row(l.ltr0() + i).head(m).dot(v);
      }
      for (int a = 0; a < l.screen_count(); ++a) {
        Vec v = out.S[p * m + l.r + a].col(q);
        ric += d.frame.screen_signs(a) * gram.row(l.r + a).head(m).dot(v);
      }
      out.ricci(p, q) = ric;
    }
  out.ricci_asymmetry = (out.ricci - out.ricci.transpose()).cwiseAbs().maxCoeff();
  return out;
}

// ---------------------------------------------------------------------------
// builtin immersions

namespace {

void require_dim(const ChartedManifold& a, int dim, const std::string& name) {
  if (a.dim != dim)
    throw FixtureConstructionError(name + " needs a " + std::to_string(dim) +
                                   "-dimensional ambient, got " + std::to_string(a.dim));
}

Vec vec(std::initializer_list<double> v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

// Linear immersion u -> A u, with the parameter box read off the ambient
// domain so that the image stays inside it.
Immersion linear_immersion(const std::string& name, const ChartedManifold& ambient, const Mat& A) {
  Immersion im;
  im.name = name;
  im.param_dim = static_cast<int>(A.cols());
  im.ambient = ambient;
  im.map = [A](const Vec& u) { return Vec(A * u); };
  im.jacobian = [A](const Vec&) { return A; };
  im.box.lower = Vec::Constant(A.cols(), -1.0);
  im.box.upper = Vec::Constant(A.cols(), 1.0);
  const Box& dom = ambient.domain;
  if (dom.dim() == ambient.dim) {
    for (Eigen::Index mu = 0; mu < A.cols(); ++mu) {
      double lo = -1e300, hi = 1e300;
      for (Eigen::Index k = 0; k < A.rows(); ++k)
        if (A(k, mu) != 0.0) {
          lo = std::max(lo, dom.lower(k) / A(k, mu));
          hi = std::min(hi, dom.upper(k) / A(k, mu));
        }
      im.box.lower(mu) = lo;
      im.box.upper(mu) = hi;
    }
  }
  return im;
}

}  // namespace

Immersion minkowski_lightlike_plane(const ChartedManifold& ambient) {
  require_dim(ambient, 4, "minkowski_lightlike_plane");
  Mat A = Mat::Zero(4, 2);
  A(0, 0) = A(1, 0) = 1.0;
  A(2, 1) = 1.0;
  return linear_immersion("minkowski_lightlike_plane", ambient, A);
}

Immersion light_cone(const ChartedManifold& ambient) {
  require_dim(ambient, 3, "light_cone");
  Immersion im;
  im.name = "light_cone";
  im.param_dim = 2;
  im.ambient = ambient;
  im.map = [](const Vec& u) {
    return vec({u(0), u(0) * std::cos(u(1)), u(0) * std::sin(u(1))});
  };
  im.jacobian = [](const Vec& u) {
    Mat j(3, 2);
    j << 1.0, 0.0, std::cos(u(1)), -u(0) * std::sin(u(1)), std::sin(u(1)), u(0) * std::cos(u(1));
    return j;
  };
  im.box = {vec({1.0, -1.0}), vec({2.0, 1.0})};
  return im;
}

Immersion r2_lightlike_plane_6d(const ChartedManifold& ambient) {
  require_dim(ambient, 6, "r2_lightlike_plane_6d");
  Mat A = Mat::Zero(6, 3);
  A(0, 0) = A(2, 0) = 1.0;
  A(1, 1) = A(3, 1) = 1.0;
  A(4, 2) = 1.0;
  return linear_immersion("r2_lightlike_plane_6d", ambient, A);
}

Immersion r2_lightlike_plane_7d(const ChartedManifold& ambient) {
  require_dim(ambient, 7, "r2_lightlike_plane_7d");
  Mat A = Mat::Zero(7, 4);
  A(0, 0) = A(2, 0) = 1.0;
  A(1, 1) = A(3, 1) = 1.0;
  A(4, 2) = 1.0;
  A(5, 3) = 1.0;
  return linear_immersion("r2_lightlike_plane_7d", ambient, A);
}

Immersion null_hyperplane_twisted_screen(const ChartedManifold& ambient) {
  require_dim(ambient, 4, "null_hyperplane_twisted_screen");
  Mat A = Mat::Zero(4, 3);
  A(0, 0) = A(1, 0) = 1.0;
  A(2, 1) = 1.0;
  A(3, 2) = 1.0;
  Immersion im = linear_immersion("null_hyperplane_twisted_screen", ambient, A);
  // screen spanned by w xi + d_v and d_w; [w xi + d_v, d_w] = -xi
  im.screen_generator = [](const Vec& u) {
    Mat b = Mat::Identity(3, 3);
    b(0, 1) = u(2);
    return b;
  };
  return im;
}

Immersion euclidean_plane(const ChartedManifold& ambient) {
  require_dim(ambient, 3, "euclidean_plane");
  Mat A = Mat::Zero(3, 2);
  A(0, 0) = 1.0;
  A(1, 1) = 1.0;
  return linear_immersion("euclidean_plane", ambient, A);
}

}  // namespace statgeo
