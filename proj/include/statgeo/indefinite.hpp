#pragma once

// Linear algebra for indefinite and degenerate symmetric bilinear forms:
// signatures, null spaces, nondegenerate complements and the null
// transversal frame that pairs with a radical basis.
//
// Every routine that makes a discrete choice (pivot columns, selected
// candidates) reports that choice and accepts it back as a frozen input, so a
// caller can rebuild the same construction at nearby points and obtain
// smoothly varying bases.

#include "statgeo/types.hpp"

#include <span>
#include <vector>

namespace statgeo {

class SymBilinearForm {
 public:
  /// Requires entries to be exactly symmetric.
  explicit SymBilinearForm(Mat entries);
  /// Symmetrizes 1/2 (A + A^T) first; use for Gram arrays built in floating point.
  static SymBilinearForm symmetrized(const Mat& a);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Mat& matrix() const { return m_; }
  double operator()(const Vec& a, const Vec& b) const { return a.dot(m_ * b); }
  /// Gram array of the form restricted to the columns of `basis`.
  SymBilinearForm restricted(const Mat& basis) const;

 private:
  Mat m_;
};

struct Signature {
  int plus = 0;
  int minus = 0;
  int zero = 0;
  bool operator==(const Signature&) const = default;
};

struct SubspaceBasis {
  int ambient_dim = 0;
  Mat vectors;  // one basis vector per column
  Signature signature;

  int count() const { return static_cast<int>(vectors.cols()); }
};

/// Eigenvalue threshold used for every rank decision: rank_tol scaled by the
/// largest |eigenvalue|, floored at 1.
double rank_threshold(const Vec& eigenvalues, double rank_tol);

Signature signature(const SymBilinearForm& form, double rank_tol);

struct NullSpace {
  Mat basis;                // columns span ker(a)
  std::vector<int> pivots;  // independent columns used for elimination
};

/// Null space of a (rows x cols) array of known rank. For every free column f
/// the vector x with x_f = 1, zero on other free columns and x_pivots solving
/// a_pivots x_pivots = -a_f is returned; the result is smooth in the entries of
/// `a` while the pivot columns stay independent.
NullSpace pivoted_null_space(const Mat& a, int rank, std::span<const int> frozen_pivots = {});

struct RadicalResult {
  SubspaceBasis basis;
  std::vector<int> pivots;
};

RadicalResult radical_basis_pivoted(const SymBilinearForm& form, double rank_tol,
                                    std::span<const int> frozen_pivots = {});
SubspaceBasis radical_basis(const SymBilinearForm& form, double rank_tol);

struct ComplementResult {
  SubspaceBasis basis;
  std::vector<int> chosen;  // indices into the subspace basis
};

/// Chooses count(subspace) - count(rad) vectors of `subspace` that together
/// with rad span it and carry a nondegenerate restriction of the form.
/// Among all subsets of the right size the one maximizing |det| of the Gram
/// array of the normalized vectors wins; ties go to the lexicographically
/// first subset. Throws DegenerateComplement (PivotBreakdown if frozen).
ComplementResult screen_complement_pivoted(const SymBilinearForm& ambient_form,
                                           const SubspaceBasis& subspace,
                                           const SubspaceBasis& rad, double rank_tol,
                                           std::span<const int> frozen_choice = {});
SubspaceBasis screen_complement(const SymBilinearForm& ambient_form,
                                const SubspaceBasis& subspace, const SubspaceBasis& rad,
                                double rank_tol);

struct TransversalResult {
  SubspaceBasis basis;
  std::vector<int> null_pivots;  // pivots of the complement null space
  std::vector<int> candidates;   // complement columns used for the pairing solve
};

/// Null vectors N_i with g(N_i, xi_j) = delta_ij, g(N_i, N_j) = 0 and N
/// orthogonal to screen and screen_perp. Throws SingularPairing.
TransversalResult lightlike_transversal_pivoted(const SymBilinearForm& ambient_form,
                                                const SubspaceBasis& xi,
                                                const SubspaceBasis& screen,
                                                const SubspaceBasis& screen_perp,
                                                double rank_tol,
                                                std::span<const int> frozen_null_pivots = {},
                                                std::span<const int> frozen_candidates = {});
SubspaceBasis lightlike_transversal(const SymBilinearForm& ambient_form, const SubspaceBasis& xi,
                                    const SubspaceBasis& screen,
                                    const SubspaceBasis& screen_perp, double rank_tol = 1e-9);

struct GramSchmidtResult {
  Mat vectors;     // orthonormalized columns
  Vec signs;       // g(v, v) = +-1
  Mat transform;   // vectors = input * transform (upper triangular)
};

/// Indefinite Gram-Schmidt in input order, normalizing by sqrt|g(v, v)|.
/// Throws GramSchmidtBreakdown when a pivot |g(v, v)| < rank_tol * |v|^2.
GramSchmidtResult indefinite_gram_schmidt(const SymBilinearForm& form, const Mat& vectors,
                                          double rank_tol);

/// {xi_i, e_alpha, N_i, W_a} with screen and screen_perp orthonormalized.
struct QuasiOrthonormalFrame {
  Mat xi;
  Mat screen;
  Mat transversal;
  Mat screen_perp;
  Vec screen_signs;
  Vec perp_signs;

  int r() const { return static_cast<int>(xi.cols()); }
  /// Columns in the order xi, screen, transversal, screen_perp.
  Mat matrix() const;
  /// Gram array the frame should have: pairing blocks xi/N, +-1 diagonals.
  Mat expected_gram() const;
};

QuasiOrthonormalFrame quasi_orthonormal_frame(const SymBilinearForm& ambient_form,
                                              const SubspaceBasis& xi,
                                              const SubspaceBasis& screen,
                                              const SubspaceBasis& screen_perp,
                                              const SubspaceBasis& transversal,
                                              double rank_tol = 1e-9);

/// Orthonormal frame of a nondegenerate form from its eigenvectors; columns
/// scaled so g(E_a, E_b) = signs_a delta_ab.
struct OrthonormalFrame {
  Mat vectors;
  Vec signs;
};
OrthonormalFrame orthonormal_frame(const SymBilinearForm& form);

}  // namespace statgeo
