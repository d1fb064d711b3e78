#include "statgeo/indefinite.hpp"

#include "statgeo/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace statgeo {

namespace {

// Calls visit(subset) for every k-subset of {0..n-1} in lexicographic order.
void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& visit) {
  if (k < 0 || k > n) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    visit(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

Mat take_columns(const Mat& m, const std::vector<int>& cols) {
  Mat out(m.rows(), static_cast<Eigen::Index>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) out.col(j) = m.col(cols[j]);
  return out;
}

double abs_det(const Mat& m) {
  if (m.rows() == 0) return 1.0;
  return std::abs(m.fullPivLu().determinant());
}

std::string list(std::span<const int> v) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << "]";
  return os.str();
}

}  // namespace

SymBilinearForm::SymBilinearForm(Mat entries) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols()) throw AsymmetricInput("bilinear form must be square");
  if (m_.rows() < 1) throw AsymmetricInput("bilinear form must have dim >= 1");
  for (Eigen::Index i = 0; i < m_.rows(); ++i)
    for (Eigen::Index j = i + 1; j < m_.cols(); ++j)
      if (m_(i, j) != m_(j, i)) throw AsymmetricInput("bilinear form entries are not symmetric");
}

SymBilinearForm SymBilinearForm::symmetrized(const Mat& a) {
  Mat s = 0.5 * (a + a.transpose());
  // make the stored array bit-symmetric
  for (Eigen::Index i = 0; i < s.rows(); ++i)
    for (Eigen::Index j = i + 1; j < s.cols(); ++j) s(j, i) = s(i, j);
  return SymBilinearForm(std::move(s));
}

SymBilinearForm SymBilinearForm::restricted(const Mat& basis) const {
  return symmetrized(basis.transpose() * m_ * basis);
}

double rank_threshold(const Vec& eigenvalues, double rank_tol) {
  double top = eigenvalues.size() ? eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  return rank_tol * std::max(1.0, top);
}

Signature signature(const SymBilinearForm& form, double rank_tol) {
  Eigen::SelfAdjointEigenSolver<Mat> es(form.matrix(), Eigen::EigenvaluesOnly);
  const Vec& ev = es.eigenvalues();
  const double thr = rank_threshold(ev, rank_tol);
  Signature s;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > thr)
      ++s.plus;
    else if (ev(i) < -thr)
      ++s.minus;
    else
      ++s.zero;
  }
  return s;
}

NullSpace pivoted_null_space(const Mat& a, int rank, std::span<const int> frozen_pivots) {
  const int cols = static_cast<int>(a.cols());
  NullSpace out;
  if (!frozen_pivots.empty()) {
    if (static_cast<int>(frozen_pivots.size()) != rank)
      throw PivotBreakdown("frozen pivot count " + std::to_string(frozen_pivots.size()) +
                           " does not match rank " + std::to_string(rank));
    out.pivots.assign(frozen_pivots.begin(), frozen_pivots.end());
  } else if (rank > 0) {
    Eigen::ColPivHouseholderQR<Mat> qr(a);
    const auto& perm = qr.colsPermutation().indices();
    for (int i = 0; i < rank; ++i) out.pivots.push_back(perm(i));
    std::sort(out.pivots.begin(), out.pivots.end());
  }

  std::vector<int> free;
  for (int c = 0; c < cols; ++c)
    if (std::find(out.pivots.begin(), out.pivots.end(), c) == out.pivots.end()) free.push_back(c);

  out.basis = Mat::Zero(cols, static_cast<Eigen::Index>(free.size()));
  if (free.empty()) return out;
  if (out.pivots.empty()) {
    for (size_t j = 0; j < free.size(); ++j) out.basis(free[j], j) = 1.0;
    return out;
  }

  Mat ab = take_columns(a, out.pivots);
  Eigen::JacobiSVD<Mat> svd(ab, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vec& sv = svd.singularValues();
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if (sv(sv.size() - 1) < 1e-10 * scale)
    throw PivotBreakdown("pivot columns " + list(out.pivots) + " are numerically dependent");
  for (size_t j = 0; j < free.size(); ++j) {
    Vec xb = -svd.solve(Vec(a.col(free[j])));
    out.basis(free[j], j) = 1.0;
    for (size_t b = 0; b < out.pivots.size(); ++b) out.basis(out.pivots[b], j) = xb(b);
  }
  return out;
}

RadicalResult radical_basis_pivoted(const SymBilinearForm& form, double rank_tol,
                                    std::span<const int> frozen_pivots) {
  Signature s = signature(form, rank_tol);
  NullSpace ns = pivoted_null_space(form.matrix(), s.plus + s.minus, frozen_pivots);
  RadicalResult out;
  out.basis.ambient_dim = form.dim();
  out.basis.vectors = ns.basis;
  out.basis.signature = {0, 0, static_cast<int>(ns.basis.cols())};
  out.pivots = std::move(ns.pivots);
  return out;
}

SubspaceBasis radical_basis(const SymBilinearForm& form, double rank_tol) {
  return radical_basis_pivoted(form, rank_tol).basis;
}

ComplementResult screen_complement_pivoted(const SymBilinearForm& ambient_form,
                                           const SubspaceBasis& subspace,
                                           const SubspaceBasis& rad, double rank_tol,
                                           std::span<const int> frozen_choice) {
  const int m = subspace.count();
  const int k = m - rad.count();
  if (k < 0) throw DegenerateComplement("radical larger than the subspace");

  Mat normalized = subspace.vectors;
  for (Eigen::Index j = 0; j < normalized.cols(); ++j) {
    double n = normalized.col(j).norm();
    if (n == 0.0) throw DegenerateComplement("zero vector in subspace basis");
    normalized.col(j) /= n;
  }

  auto gram_of = [&](const std::vector<int>& sel) {
    Mat c = take_columns(normalized, sel);
    return Mat(c.transpose() * ambient_form.matrix() * c);
  };

  std::vector<int> chosen;
  if (!frozen_choice.empty()) {
    chosen.assign(frozen_choice.begin(), frozen_choice.end());
    if (static_cast<int>(chosen.size()) != k)
      throw PivotBreakdown("frozen screen choice " + list(frozen_choice) + " has wrong size");
  } else {
    double best = -1.0;
    for_each_subset(m, k, [&](const std::vector<int>& sel) {
      double d = abs_det(gram_of(sel));
      if (d > best * (1.0 + 1e-10) + 1e-300) {
        best = d;
        chosen = sel;
      }
    });
  }

  ComplementResult out;
  out.basis.ambient_dim = subspace.ambient_dim;
  out.basis.vectors = take_columns(subspace.vectors, chosen);
  out.chosen = chosen;
  if (k == 0) return out;

  Signature s = signature(SymBilinearForm::symmetrized(gram_of(chosen)), rank_tol);
  if (s.zero != 0) {
    if (!frozen_choice.empty())
      throw PivotBreakdown("frozen screen choice " + list(frozen_choice) +
                           " became degenerate");
    throw DegenerateComplement("no nondegenerate complement of the radical at rank_tol");
  }
  out.basis.signature = signature(ambient_form.restricted(out.basis.vectors), rank_tol);
  return out;
}

SubspaceBasis screen_complement(const SymBilinearForm& ambient_form,
                                const SubspaceBasis& subspace, const SubspaceBasis& rad,
                                double rank_tol) {
  return screen_complement_pivoted(ambient_form, subspace, rad, rank_tol).basis;
}

TransversalResult lightlike_transversal_pivoted(const SymBilinearForm& ambient_form,
                                                const SubspaceBasis& xi,
                                                const SubspaceBasis& screen,
                                                const SubspaceBasis& screen_perp,
                                                double rank_tol,
                                                std::span<const int> frozen_null_pivots,
                                                std::span<const int> frozen_candidates) {
  const int dim = ambient_form.dim();
  const int r = xi.count();
  TransversalResult out;
  out.basis.ambient_dim = dim;
  out.basis.vectors = Mat::Zero(dim, r);
  out.basis.signature = {0, 0, r};
  if (r == 0) return out;

  const Mat& g = ambient_form.matrix();
  const int s = screen.count();
  const int p = screen_perp.count();
  if (dim != 2 * r + s + p)
    throw SingularPairing("dimension count 2r + screen + screen_perp does not match ambient");

  // candidates: vectors orthogonal to screen and screen_perp
  Mat z;
  if (s + p > 0) {
    Mat sw(dim, s + p);
    sw << screen.vectors, screen_perp.vectors;
    NullSpace ns = pivoted_null_space(sw.transpose() * g, s + p, frozen_null_pivots);
    z = ns.basis;
    out.null_pivots = ns.pivots;
  } else {
    z = Mat::Identity(dim, dim);
  }

  Mat pairing = z.transpose() * g * xi.vectors;  // (2r x r)
  std::vector<int> sel;
  double best = -1.0;
  if (!frozen_candidates.empty()) {
    sel.assign(frozen_candidates.begin(), frozen_candidates.end());
    Mat ps(r, r);
    for (int i = 0; i < r; ++i) ps.row(i) = pairing.row(sel[i]);
    best = abs_det(ps);
  } else {
    for_each_subset(static_cast<int>(z.cols()), r, [&](const std::vector<int>& cand) {
      Mat ps(r, r);
      for (int i = 0; i < r; ++i) ps.row(i) = pairing.row(cand[i]);
      double d = abs_det(ps);
      if (d > best * (1.0 + 1e-10) + 1e-300) {
        best = d;
        sel = cand;
      }
    });
  }
  const double scale = std::max(1.0, pairing.cwiseAbs().maxCoeff());
  if (best < rank_tol * std::pow(scale, r)) {
    if (!frozen_candidates.empty())
      throw PivotBreakdown("frozen transversal candidates " + list(frozen_candidates) +
                           " lost their pairing with the radical");
    throw SingularPairing("pairing array between candidates and radical is singular");
  }
  out.candidates = sel;

  Mat zs(dim, r), ps(r, r);
  for (int i = 0; i < r; ++i) {
    zs.col(i) = z.col(sel[i]);
    ps.row(i) = pairing.row(sel[i]);
  }
  Mat c = ps.transpose().fullPivLu().inverse();
  Mat v = zs * c;
  Mat vv = v.transpose() * g * v;
  vv = 0.5 * (vv + vv.transpose());
  out.basis.vectors = v - 0.5 * xi.vectors * vv;
  return out;
}

SubspaceBasis lightlike_transversal(const SymBilinearForm& ambient_form, const SubspaceBasis& xi,
                                    const SubspaceBasis& screen,
                                    const SubspaceBasis& screen_perp, double rank_tol) {
  return lightlike_transversal_pivoted(ambient_form, xi, screen, screen_perp, rank_tol).basis;
}

GramSchmidtResult indefinite_gram_schmidt(const SymBilinearForm& form, const Mat& vectors,
                                          double rank_tol) {
  const Eigen::Index n = vectors.cols();
  GramSchmidtResult out;
  out.vectors = Mat::Zero(vectors.rows(), n);
  out.signs = Vec::Zero(n);
  out.transform = Mat::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Vec a = vectors.col(j);
    Vec v = a;
    Vec coeff = Vec::Zero(n);
    coeff(j) = 1.0;
    for (Eigen::Index k = 0; k < j; ++k) {
      double proj = out.signs(k) * form(a, out.vectors.col(k));
      v -= proj * out.vectors.col(k);
      coeff -= proj * out.transform.col(k);
    }
    double nn = form(v, v);
    if (std::abs(nn) < rank_tol * v.squaredNorm() || v.squaredNorm() == 0.0)
      throw GramSchmidtBreakdown("vector " + std::to_string(j) +
                                 " is numerically null after orthogonalization");
    double sc = 1.0 / std::sqrt(std::abs(nn));
    out.vectors.col(j) = v * sc;
    out.transform.col(j) = coeff * sc;
    out.signs(j) = nn > 0 ? 1.0 : -1.0;
  }
  return out;
}

Mat QuasiOrthonormalFrame::matrix() const {
  Mat f(xi.rows(), xi.cols() + screen.cols() + transversal.cols() + screen_perp.cols());
  f << xi, screen, transversal, screen_perp;
  return f;
}

Mat QuasiOrthonormalFrame::expected_gram() const {
  const int rr = r();
  const int s = static_cast<int>(screen.cols());
  const int p = static_cast<int>(screen_perp.cols());
  const int d = 2 * rr + s + p;
  Mat g = Mat::Zero(d, d);
  for (int i = 0; i < rr; ++i) {
    g(i, rr + s + i) = 1.0;
    g(rr + s + i, i) = 1.0;
  }
  for (int a = 0; a < s; ++a) g(rr + a, rr + a) = screen_signs(a);
  for (int a = 0; a < p; ++a) g(2 * rr + s + a, 2 * rr + s + a) = perp_signs(a);
  return g;
}

QuasiOrthonormalFrame quasi_orthonormal_frame(const SymBilinearForm& ambient_form,
                                              const SubspaceBasis& xi,
                                              const SubspaceBasis& screen,
                                              const SubspaceBasis& screen_perp,
                                              const SubspaceBasis& transversal,
                                              double rank_tol) {
  QuasiOrthonormalFrame f;
  f.xi = xi.vectors;
  f.transversal = transversal.vectors;
  GramSchmidtResult s = indefinite_gram_schmidt(ambient_form, screen.vectors, rank_tol);
  GramSchmidtResult w = indefinite_gram_schmidt(ambient_form, screen_perp.vectors, rank_tol);
  f.screen = s.vectors;
  f.screen_signs = s.signs;
  f.screen_perp = w.vectors;
  f.perp_signs = w.signs;
  if (f.xi.rows() == 0) f.xi.resize(ambient_form.dim(), 0);
  if (f.transversal.rows() == 0) f.transversal.resize(ambient_form.dim(), 0);
  if (f.screen.rows() == 0) f.screen.resize(ambient_form.dim(), 0);
  if (f.screen_perp.rows() == 0) f.screen_perp.resize(ambient_form.dim(), 0);
  return f;
}

OrthonormalFrame orthonormal_frame(const SymBilinearForm& form) {
  Eigen::SelfAdjointEigenSolver<Mat> es(form.matrix());
  const Vec& ev = es.eigenvalues();
  const double thr = rank_threshold(ev, 1e-12);
  OrthonormalFrame out;
  out.vectors = es.eigenvectors();
  out.signs = Vec(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i)) <= thr) throw SingularMetric("form is degenerate, no orthonormal frame");
    out.vectors.col(i) /= std::sqrt(std::abs(ev(i)));
    out.signs(i) = ev(i) > 0 ? 1.0 : -1.0;
  }
  return out;
}

}  // namespace statgeo
