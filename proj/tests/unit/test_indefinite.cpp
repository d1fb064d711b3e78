#include "doctest.h"

#include "statgeo/errors.hpp"
#include "statgeo/indefinite.hpp"
#include "statgeo/sampling.hpp"

#include <Eigen/Eigenvalues>

#include <vector>

using namespace statgeo;

namespace {

Mat diag(std::initializer_list<double> v) {
  Vec d(static_cast<Eigen::Index>(v.size()));
  int i = 0;
  for (double x : v) d(i++) = x;
  return d.asDiagonal();
}

Vec vec(std::initializer_list<double> v) {
  Vec d(static_cast<Eigen::Index>(v.size()));
  int i = 0;
  for (double x : v) d(i++) = x;
  return d;
}

SubspaceBasis basis(const Mat& cols) {
  SubspaceBasis b;
  b.ambient_dim = static_cast<int>(cols.rows());
  b.vectors = cols;
  return b;
}

// Orthogonal projector onto the column span, for comparing subspaces.
Mat projector(const Mat& a) {
  if (a.cols() == 0) return Mat::Zero(a.rows(), a.rows());
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU);
  Mat u = svd.matrixU();
  return u * u.transpose();
}

// Null space from a full eigendecomposition, independent of the pivoted solver.
Mat eigen_null_space(const Mat& a, double tol) {
  Eigen::SelfAdjointEigenSolver<Mat> es(a);
  std::vector<int> idx;
  for (int i = 0; i < a.rows(); ++i)
    if (std::abs(es.eigenvalues()(i)) <= tol) idx.push_back(i);
  Mat out(a.rows(), static_cast<Eigen::Index>(idx.size()));
  for (size_t j = 0; j < idx.size(); ++j) out.col(j) = es.eigenvectors().col(idx[j]);
  return out;
}

// Brute force over subsets of the subspace basis: returns every subset of the
// right size whose Gram array is nondegenerate.
std::vector<std::vector<int>> admissible_complements(const Mat& g, const Mat& sub, int k) {
  std::vector<std::vector<int>> out;
  const int m = static_cast<int>(sub.cols());
  for (int mask = 0; mask < (1 << m); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    std::vector<int> sel;
    for (int j = 0; j < m; ++j)
      if (mask & (1 << j)) sel.push_back(j);
    Mat c(sub.rows(), k);
    for (int j = 0; j < k; ++j) c.col(j) = sub.col(sel[j]);
    if (std::abs((c.transpose() * g * c).determinant()) > 1e-9) out.push_back(sel);
  }
  return out;
}

}  // namespace

TEST_CASE("signature of small forms") {
  CHECK(signature(SymBilinearForm(diag({-1, 1, 1})), 1e-10) == Signature{2, 1, 0});
  CHECK(signature(SymBilinearForm(Mat::Identity(3, 3)), 1e-10) == Signature{3, 0, 0});
  // induced Gram of (u, u, v, 0) in diag(-1, 1, 1, 1)
  Mat j(4, 2);
  j << 1, 0, 1, 0, 0, 1, 0, 0;
  Mat gram = j.transpose() * diag({-1, 1, 1, 1}) * j;
  CHECK(signature(SymBilinearForm(gram), 1e-10) == Signature{1, 0, 1});
}

TEST_CASE("form construction rejects asymmetric entries") {
  Mat a(2, 2);
  a << 1, 2, 3, 4;
  CHECK_THROWS_AS(SymBilinearForm{a}, AsymmetricInput);
  CHECK(SymBilinearForm::symmetrized(a).matrix()(0, 1) == doctest::Approx(2.5));
}

TEST_CASE("signature is a congruence invariant") {
  UnitRng rng(17);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 2 + trial % 5;
    Vec d(n);
    for (int i = 0; i < n; ++i) {
      double u = rng.next();
      d(i) = u < 0.2 ? 0.0 : (u < 0.55 ? -1.0 : 1.0) * rng.uniform(0.5, 2.0);
    }
    Mat p = Mat::Identity(n, n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) p(i, k) += rng.uniform(-0.3, 0.3);
    Eigen::JacobiSVD<Mat> svd(p);
    double cond = svd.singularValues()(0) / svd.singularValues()(n - 1);
    REQUIRE(cond < 1e3);
    Mat a = d.asDiagonal();
    Signature expect{0, 0, 0};
    for (int i = 0; i < n; ++i) (d(i) > 0 ? expect.plus : d(i) < 0 ? expect.minus : expect.zero)++;
    Mat congruent = p.transpose() * a * p;
    CHECK(signature(SymBilinearForm::symmetrized(congruent), 1e-9) == expect);
  }
}

TEST_CASE("radical basis examples") {
  SubspaceBasis r = radical_basis(SymBilinearForm(diag({0, 1})), 1e-9);
  REQUIRE(r.count() == 1);
  CHECK((r.vectors.col(0) - vec({1, 0})).norm() < 1e-14);
  CHECK(r.signature == Signature{0, 0, 1});

  CHECK(radical_basis(SymBilinearForm(diag({-1, 1})), 1e-9).count() == 0);

  SubspaceBasis r7 = radical_basis(SymBilinearForm(diag({0, 0, 1})), 1e-9);
  REQUIRE(r7.count() == 2);
  Mat oracle = eigen_null_space(diag({0, 0, 1}), 1e-12);
  CHECK((projector(r7.vectors) - projector(oracle)).norm() < 1e-12);
}

TEST_CASE("radical basis of rotated degenerate forms matches the eigen oracle") {
  UnitRng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + trial % 3;
    Mat q = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) q(i, k) = rng.uniform(-1, 1);
    q = Eigen::HouseholderQR<Mat>(q).householderQ();
    Vec d(n);
    for (int i = 0; i < n; ++i) d(i) = i < 1 + trial % 2 ? 0.0 : (i % 2 ? -1.0 : 1.0) * (1 + i);
    Mat a = q * d.asDiagonal() * q.transpose();
    SymBilinearForm form = SymBilinearForm::symmetrized(a);
    const double tol = 1e-9;
    SubspaceBasis r = radical_basis(form, tol);
    Mat oracle = eigen_null_space(form.matrix(), 1e-9);
    CHECK(r.count() == oracle.cols());
    CHECK((projector(r.vectors) - projector(oracle)).norm() < 1e-9);
    for (int i = 0; i < r.count(); ++i)
      for (int k = 0; k < n; ++k) {
        Vec w = Vec::Unit(n, k);
        CHECK(std::abs(form(r.vectors.col(i), w)) <= 10 * tol * r.vectors.col(i).norm());
      }
  }
}

TEST_CASE("screen complement matches the brute-force oracle") {
  SUBCASE("null 2-plane in Minkowski 4-space") {
    Mat g = diag({-1, 1, 1, 1});
    Mat tm(4, 2);
    tm << 1, 0, 1, 0, 0, 1, 0, 0;
    SubspaceBasis rad = basis(vec({1, 1, 0, 0}));
    ComplementResult c = screen_complement_pivoted(SymBilinearForm(g), basis(tm), rad, 1e-9);
    auto ok = admissible_complements(g, tm, 1);
    REQUIRE(ok.size() == 1);
    CHECK(c.chosen == ok[0]);
    CHECK((c.basis.vectors.col(0) - vec({0, 0, 1, 0})).norm() == 0.0);
    CHECK(c.basis.signature == Signature{1, 0, 0});
  }
  SUBCASE("rank-2 null 3-plane in 6-space") {
    Mat g = diag({-1, -1, 1, 1, 1, 1});
    Mat tm = Mat::Zero(6, 3);
    tm(0, 0) = tm(2, 0) = 1;
    tm(1, 1) = tm(3, 1) = 1;
    tm(4, 2) = 1;
    Mat rad(6, 2);
    rad << tm.col(0), tm.col(1);
    SubspaceBasis s = screen_complement(SymBilinearForm(g), basis(tm), basis(rad), 1e-9);
    auto ok = admissible_complements(g, tm, 1);
    REQUIRE(ok.size() == 1);
    CHECK((s.vectors.col(0) - tm.col(ok[0][0])).norm() == 0.0);
    CHECK((s.vectors.col(0) - Vec::Unit(6, 4)).norm() == 0.0);
  }
  SUBCASE("no radical keeps the whole space") {
    Mat g = diag({-1, 1, 1});
    SubspaceBasis s =
        screen_complement(SymBilinearForm(g), basis(Mat::Identity(3, 3)), basis(Mat(3, 0)), 1e-9);
    CHECK(s.count() == 3);
    CHECK((projector(s.vectors) - Mat::Identity(3, 3)).norm() < 1e-14);
  }
  SUBCASE("null subspace with no declared radical fails") {
    Mat g = diag({-1, 1, 1, 1});
    CHECK_THROWS_AS(screen_complement(SymBilinearForm(g), basis(vec({1, 1, 0, 0})),
                                      basis(Mat(4, 0)), 1e-9),
                    DegenerateComplement);
  }
}

TEST_CASE("lightlike transversal") {
  SUBCASE("null 2-plane in Minkowski 4-space") {
    SymBilinearForm g(diag({-1, 1, 1, 1}));
    SubspaceBasis n = lightlike_transversal(g, basis(vec({1, 1, 0, 0})), basis(vec({0, 0, 1, 0})),
                                            basis(vec({0, 0, 0, 1})));
    REQUIRE(n.count() == 1);
    CHECK((n.vectors.col(0) - vec({-0.5, 0.5, 0, 0})).norm() < 1e-15);
  }
  SUBCASE("r = 0") {
    SymBilinearForm g(diag({1, 1}));
    SubspaceBasis n =
        lightlike_transversal(g, basis(Mat(2, 0)), basis(Mat::Identity(2, 2)), basis(Mat(2, 0)));
    CHECK(n.count() == 0);
  }
  SUBCASE("rank-2 null 3-plane in 6-space") {
    SymBilinearForm g(diag({-1, -1, 1, 1, 1, 1}));
    Mat xi = Mat::Zero(6, 2);
    xi(0, 0) = xi(2, 0) = 1;
    xi(1, 1) = xi(3, 1) = 1;
    SubspaceBasis n = lightlike_transversal(g, basis(xi), basis(Vec::Unit(6, 4)),
                                            basis(Vec::Unit(6, 5)));
    Mat expect = Mat::Zero(6, 2);
    expect(0, 0) = -0.5;
    expect(2, 0) = 0.5;
    expect(1, 1) = -0.5;
    expect(3, 1) = 0.5;
    CHECK((n.vectors - expect).norm() < 1e-15);
  }
  SUBCASE("pairing relations on boosted frames") {
    // Lorentz boosts of the null plane frame keep every relation; the construction
    // has to reproduce them without knowing the boost.
    UnitRng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
      double b = rng.uniform(-1.5, 1.5), th = rng.uniform(-3, 3);
      Mat l = Mat::Identity(4, 4);
      l(0, 0) = l(1, 1) = std::cosh(b);
      l(0, 1) = l(1, 0) = std::sinh(b);
      Mat rot = Mat::Identity(4, 4);
      rot(2, 2) = rot(3, 3) = std::cos(th);
      rot(2, 3) = -std::sin(th);
      rot(3, 2) = std::sin(th);
      Mat t = l * rot;
      Mat gm = diag({-1, 1, 1, 1});
      SymBilinearForm g(gm);
      Vec xi = t * vec({1, 1, 0, 0}), e = t * vec({0, 0, 1, 0}), w = t * vec({0, 0, 0, 1});
      Vec n = lightlike_transversal(g, basis(xi), basis(e), basis(w)).vectors.col(0);
      CHECK(std::abs(g(n, xi) - 1.0) < 1e-10);
      CHECK(std::abs(g(n, n)) < 1e-10);
      CHECK(std::abs(g(n, e)) < 1e-10);
      CHECK(std::abs(g(n, w)) < 1e-10);
    }
  }
  SUBCASE("radical inside the screen has no pairing") {
    SymBilinearForm g(diag({-1, 1, 1, 1}));
    CHECK_THROWS_AS(lightlike_transversal(g, basis(Vec::Unit(4, 3)), basis(Vec::Unit(4, 3)),
                                          basis(Vec::Unit(4, 1))),
                    SingularPairing);
  }
}

TEST_CASE("indefinite Gram-Schmidt") {
  SymBilinearForm g(diag({-1, 1, 1}));
  Mat v(3, 3);
  v << 2, 1, 0, 0, 1, 0, 0, 0.5, 3;
  GramSchmidtResult gs = indefinite_gram_schmidt(g, v, 1e-9);
  Mat gram = gs.vectors.transpose() * g.matrix() * gs.vectors;
  CHECK((gram - Mat(gs.signs.asDiagonal())).norm() < 1e-13);
  CHECK(gs.signs(0) == -1.0);
  CHECK((v * gs.transform - gs.vectors).norm() < 1e-13);

  Mat null(3, 1);
  null << 1, 1, 0;
  CHECK_THROWS_AS(indefinite_gram_schmidt(g, null, 1e-9), GramSchmidtBreakdown);
}

TEST_CASE("quasi-orthonormal frames") {
  SUBCASE("null 2-plane in Minkowski 4-space") {
    SymBilinearForm g(diag({-1, 1, 1, 1}));
    SubspaceBasis xi = basis(vec({1, 1, 0, 0})), e = basis(vec({0, 0, 1, 0})),
                  w = basis(vec({0, 0, 0, 1}));
    SubspaceBasis n = lightlike_transversal(g, xi, e, w);
    QuasiOrthonormalFrame f = quasi_orthonormal_frame(g, xi, e, w, n);
    Mat expect(4, 4);
    expect << 1, 0, -0.5, 0, 1, 0, 0.5, 0, 0, 1, 0, 0, 0, 0, 0, 1;
    CHECK((f.matrix() - expect).norm() < 1e-15);
    CHECK(f.screen_signs(0) == 1.0);
    CHECK(f.perp_signs(0) == 1.0);
    Mat gram = f.matrix().transpose() * g.matrix() * f.matrix();
    CHECK((gram - f.expected_gram()).cwiseAbs().maxCoeff() < 1e-10);
  }
  SUBCASE("Euclidean plane") {
    SymBilinearForm g(Mat::Identity(2, 2));
    QuasiOrthonormalFrame f = quasi_orthonormal_frame(g, basis(Mat(2, 0)),
                                                      basis(Mat::Identity(2, 2)),
                                                      basis(Mat(2, 0)), basis(Mat(2, 0)));
    CHECK((f.matrix() - Mat::Identity(2, 2)).norm() < 1e-15);
  }
  SUBCASE("rank-2 null 3-plane in 6-space") {
    SymBilinearForm g(diag({-1, -1, 1, 1, 1, 1}));
    Mat xi = Mat::Zero(6, 2);
    xi(0, 0) = xi(2, 0) = 1;
    xi(1, 1) = xi(3, 1) = 1;
    SubspaceBasis e = basis(Vec::Unit(6, 4)), w = basis(Vec::Unit(6, 5));
    SubspaceBasis n = lightlike_transversal(g, basis(xi), e, w);
    QuasiOrthonormalFrame f = quasi_orthonormal_frame(g, basis(xi), e, w, n);
    CHECK(f.matrix().cols() == 6);
    CHECK(f.screen_signs(0) == 1.0);
    CHECK(f.perp_signs(0) == 1.0);
    Mat gram = f.matrix().transpose() * g.matrix() * f.matrix();
    CHECK((gram - f.expected_gram()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(Eigen::FullPivLU<Mat>(f.matrix()).rank() == 6);
  }
}

TEST_CASE("frozen pivots reproduce the same construction nearby") {
  Mat a(1, 3);
  a << 1.0, 2.0, 0.5;
  NullSpace ns = pivoted_null_space(a, 1);
  Mat b = a;
  b(0, 2) += 1e-4;
  NullSpace frozen = pivoted_null_space(b, 1, ns.pivots);
  CHECK(frozen.pivots == ns.pivots);
  CHECK((frozen.basis - ns.basis).norm() < 1e-3);
  CHECK((b * frozen.basis).norm() < 1e-14);
  Mat bad(1, 3);
  bad << 0.0, 2.0, 0.5;
  std::vector<int> pivot0{0};
  CHECK_THROWS_AS(pivoted_null_space(bad, 1, pivot0), PivotBreakdown);
}
