#pragma once

// Quotient (GNS-style) construction.  A positive trace induces a sesquilinear
// form on the algebra; quotienting by its null ideal gives a pre-Hilbert space
// on which multiplication operators act, with star going to the honest matrix
// adjoint.  The same machinery runs one level up: a state on the operator
// algebra induces a form on a closed operator basis, and the quotient carries
// a representation of the operators by composition.
//
// Purity is decided operationally: the commutant of the represented generators
// is computed as a nullspace problem, and a 1-dimensional commutant means the
// state cannot be decomposed (irreducible representation).

#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "naqm/states.hpp"

namespace naqm {

// --- null ideal of a trace ------------------------------------------------------

// Basis of J = { x : tau(x^* x) = 0 }, the null ideal of the Gram form.
// Verifies the module property: left and right multiplications map J into J.
template <class S>
std::vector<Element<S>> zero_norm_ideal(const TraceFunctional<S>& tr, double eps = 1e-8) {
  const auto& A = *tr.alg;
  Mat<S> g = gram_matrix(tr);
  if (max_abs_diff(g, g.adjoint()) > eps)
    throw ValidationError("trace Gram form is not hermitian");

  std::vector<Vec<S>> kernel;
  if constexpr (ScalarTraits<S>::exact) {
    if (!detail::exact_psd(g)) throw ValidationError("trace is not positive");
    kernel = null_space_exact(g);
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(g),
                                           Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double cutoff = sv.size() ? 1e-8 * sv(0) : 0.0;
    double lam_min = detail::min_eigenvalue_hermitian(g);
    if (lam_min < -eps * std::max(1.0, g.max_abs()))
      throw ValidationError("trace is not positive");
    for (long k = 0; k < sv.size(); ++k)
      if (sv(k) <= cutoff) kernel.push_back(from_eigen_vec(svd.matrixV().col(k)));
  }

  // Module property: multiplication operators keep the ideal inside itself.
  RowSpan<S> span(A.n);
  for (const auto& v : kernel) span.insert(v);
  for (const auto& v : kernel)
    for (int mu = 0; mu < A.n; ++mu) {
      if (!span.contains(A.lmul[mu].apply(v)) || !span.contains(A.rmul[mu].apply(v)))
        throw InternalError("null ideal is not stable under multiplication operators");
    }

  std::vector<Element<S>> out;
  out.reserve(kernel.size());
  for (auto& v : kernel) out.push_back({tr.alg, std::move(v)});
  return out;
}

// --- pre-Hilbert quotient data ----------------------------------------------------

// W's columns are quotient representatives, orthonormal for the ambient Gram:
// W^dagger G W = Id.  vacuum holds the class of the cyclic vector in that
// basis.  gram_eigenvalues reports the full ambient spectrum (descending), so
// callers can see both the surviving and the quotiented-away directions.
struct PreHilbert {
  int ambient_dim = 0;
  Mat<Complex> G;   // ambient Gram form
  Mat<Complex> W;   // ambient_dim x quotient_dim representative matrix
  std::vector<double> gram_eigenvalues;
  Vec<Complex> vacuum;
  int dim() const { return W.cols; }
};

struct Representation {
  PreHilbert H;
  // Ambient action of a multiplication operator (matrix on the ambient space).
  std::function<Mat<Complex>(const MultOp<Complex>&)> ambient_action;

  Mat<Complex> apply(const MultOp<Complex>& X) const {
    return H.W.adjoint() * (H.G * (ambient_action(X) * H.W));
  }
  Vec<Complex> apply_vec(const MultOp<Complex>& X, const Vec<Complex>& v) const {
    Mat<Complex> a = apply(X);
    return a.apply(v);
  }
};

namespace detail {

// Split a PSD Gram into orthonormal representatives.  The spectrum is reported
// from an eigendecomposition, but the representatives themselves come from a
// Gram-Schmidt sweep over the ambient basis in order, so a Gram that is already
// (a multiple of) the identity keeps the ambient labeling instead of picking up
// an arbitrary rotation from a degenerate eigensolver.
inline PreHilbert quotient_from_gram(const Mat<Complex>& g, const Vec<Complex>& cyclic_coords,
                                     double eps = 1e-8) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(g));
  if (es.info() != Eigen::Success) throw InternalError("gram eigendecomposition failed");
  const auto& lam = es.eigenvalues();
  double lam_max = lam.size() ? lam.maxCoeff() : 0.0;
  if (lam.size() && lam.minCoeff() < -eps * std::max(1.0, lam_max))
    throw ValidationError("Gram form is not positive semidefinite");
  double cutoff = 1e-8 * std::max(lam_max, 0.0);

  PreHilbert H;
  H.ambient_dim = static_cast<int>(g.rows);
  H.G = g;
  for (long k = lam.size() - 1; k >= 0; --k) H.gram_eigenvalues.push_back(lam(k));

  // Modified Gram-Schmidt in the G inner product, two passes for stability;
  // basis directions of (relative) null length fall into the quotiented ideal.
  Eigen::MatrixXcd ge = to_eigen(g);
  std::vector<Eigen::VectorXcd> kept;
  for (int i = 0; i < H.ambient_dim; ++i) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(H.ambient_dim);
    v(i) = 1.0;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& w : kept) v -= w * (w.adjoint() * (ge * v))(0);
    double n2 = std::real((v.adjoint() * (ge * v))(0));
    if (n2 > cutoff) kept.push_back(v / std::sqrt(n2));
  }
  H.W = Mat<Complex>(H.ambient_dim, static_cast<int>(kept.size()));
  for (size_t j = 0; j < kept.size(); ++j)
    for (int i = 0; i < H.ambient_dim; ++i) H.W(i, static_cast<int>(j)) = kept[j](i);
  // Class of the cyclic vector: orthogonal coordinates w_i^dagger G c.
  Eigen::MatrixXcd Wp = to_eigen(H.W);
  Eigen::VectorXcd coords = Wp.adjoint() * (to_eigen(g) * to_eigen_vec(cyclic_coords));
  H.vacuum = from_eigen_vec(coords);
  return H;
}

}  // namespace detail

// --- tracial construction ---------------------------------------------------------

// Quotient of the algebra itself by the trace's null ideal; multiplication
// operators act by their coefficient matrices.
inline Representation tracial_gns(const TraceFunctional<Complex>& tr, double eps = 1e-8) {
  Mat<Complex> g = gram_matrix(tr);
  if (max_abs_diff(g, g.adjoint()) > eps)
    throw ValidationError("trace Gram form is not hermitian");
  PreHilbert H = detail::quotient_from_gram(g, tr.alg->unit, eps);
  Representation rep;
  rep.H = std::move(H);
  rep.ambient_action = [](const MultOp<Complex>& X) { return X.m; };
  return rep;
}

// --- construction from a state on the operator algebra ----------------------------

// basis must be a closed operator subalgebra containing the identity (the
// cyclic vector is the class of the identity operator).
inline Representation gns_from_state(const State<Complex>& w,
                                     std::shared_ptr<const GeneratedSubalgebra<Complex>> basis,
                                     double eps = 1e-8) {
  if (!basis || basis->dim() == 0) throw ValidationError("gns_from_state needs a basis");
  if (!basis->closed)
    throw ValidationError("operator basis is not closed under composition");
  const int d = basis->dim();

  std::vector<MultOp<Complex>> starred;
  starred.reserve(static_cast<size_t>(d));
  for (const auto& b : basis->basis) starred.push_back(star_op(b));

  Mat<Complex> g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      g(i, j) = w(compose(starred[static_cast<size_t>(i)], basis->basis[static_cast<size_t>(j)]));

  Vec<Complex> unit_coords = coordinates_in_basis(*basis, identity_op(basis->alg), eps);
  PreHilbert H = detail::quotient_from_gram(g, unit_coords, eps);

  Representation rep;
  rep.H = std::move(H);
  rep.ambient_action = [basis, eps](const MultOp<Complex>& X) {
    const int dd = basis->dim();
    Mat<Complex> m(dd, dd);
    for (int j = 0; j < dd; ++j) {
      Vec<Complex> col =
          coordinates_in_basis(*basis, compose(X, basis->basis[static_cast<size_t>(j)]), eps);
      for (int i = 0; i < dd; ++i) m(i, j) = col[static_cast<size_t>(i)];
    }
    return m;
  };
  return rep;
}

// --- commutant and purity ----------------------------------------------------------

struct Commutant {
  int dim = 0;
  std::vector<Mat<Complex>> basis;
};

// Joint commutant { C : [M_i, C] = 0 } as the nullspace of the stacked
// Sylvester operators I (x) M_i - M_i^T (x) I acting on vec(C).
inline Commutant commutant(const std::vector<Mat<Complex>>& mats, double eps = 1e-8) {
  if (mats.empty()) throw ValidationError("commutant of an empty family is everything");
  const int q = mats[0].rows;
  Eigen::MatrixXcd stacked(static_cast<long>(mats.size()) * q * q, q * q);
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(q, q);
  for (size_t k = 0; k < mats.size(); ++k) {
    Eigen::MatrixXcd M = to_eigen(mats[k]);
    Eigen::MatrixXcd op(q * q, q * q);
    // vec is row-major here: vec(C)_{(i*q+j)} = C(i,j); [M,C] = MC - CM.
    for (int i = 0; i < q; ++i)
      for (int j = 0; j < q; ++j)
        for (int a = 0; a < q; ++a)
          for (int b = 0; b < q; ++b)
            op(i * q + j, a * q + b) = M(i, a) * id(j, b) - id(i, a) * M(b, j);
    stacked.middleRows(static_cast<long>(k) * q * q, q * q) = op;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stacked, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double cutoff = sv.size() ? 1e-8 * std::max(sv(0), 1.0) : 0.0;
  Commutant out;
  for (long k = 0; k < svd.matrixV().cols(); ++k) {
    if (k < sv.size() && sv(k) > cutoff) continue;
    Eigen::VectorXcd v = svd.matrixV().col(k);
    Mat<Complex> c(q, q);
    for (int i = 0; i < q; ++i)
      for (int j = 0; j < q; ++j) c(i, j) = v(i * q + j);
    out.basis.push_back(std::move(c));
  }
  out.dim = static_cast<int>(out.basis.size());
  (void)eps;
  return out;
}

// Commutant of a represented generating family.
inline Commutant commutant(const Representation& rep, const std::vector<MultOp<Complex>>& gens) {
  std::vector<Mat<Complex>> mats;
  mats.reserve(gens.size());
  for (const auto& g : gens) mats.push_back(rep.apply(g));
  return commutant(mats);
}

struct GnsSummary {
  Representation rep;
  Commutant comm;
  bool pure = false;
};

// Full pipeline: quotient, represent, compute the commutant of the represented
// basis, decide purity (trivial commutant).
inline GnsSummary gns_summary(const State<Complex>& w,
                              std::shared_ptr<const GeneratedSubalgebra<Complex>> basis,
                              double eps = 1e-8) {
  GnsSummary out;
  out.rep = gns_from_state(w, basis, eps);
  out.comm = commutant(out.rep, basis->basis);
  out.pure = out.comm.dim == 1;
  return out;
}

// A state is pure exactly when its quotient representation has trivial commutant.
inline bool is_pure(const State<Complex>& w,
                    std::shared_ptr<const GeneratedSubalgebra<Complex>> basis,
                    double eps = 1e-8) {
  return gns_summary(w, std::move(basis), eps).pure;
}

}  // namespace naqm
