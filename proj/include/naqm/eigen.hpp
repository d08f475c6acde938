#pragma once

// Spectral analysis of multiplication operators, and the bridge between
// matrix-level eigenvectors and state-level eigenstates:
//
//   * an eigenvector psi of an observable X with tau(psi^* psi) = 1 induces a
//     vector state that is an eigenstate of X: w(B X) = lambda w(B) for every
//     operator B, the eigenvalue is real, and the uncertainty of X vanishes;
//   * eigenvectors for distinct eigenvalues are orthogonal in the trace form;
//   * degenerate clusters are re-orthonormalized against the trace Gram so
//     downstream orthogonality checks are meaningful.
//
// Jordan instances additionally get the spectral-projector construction: for
// an eigenvalue lambda of the underlying hermitian matrix, weighted projector
// sums sqrt(p_i) phi_i phi_i^dagger are eigenvectors of the Jordan
// multiplication operator in the algebra itself.

#include <algorithm>
#include <vector>

#include <Eigen/Eigenvalues>

#include "naqm/gns.hpp"
#include "naqm/instances.hpp"

namespace naqm {

struct EigenPair {
  Complex lambda;
  Element<Complex> vec;
  double residual = 0.0;   // |X v - lambda v|_max / max(1, |lambda|), Euclidean-normalized v
  bool suspect = false;    // flagged when its cluster could not be independently orthonormalized
};

struct EigenDecomposition {
  std::vector<EigenPair> pairs;
  bool defective = false;  // eigenvector matrix numerically rank-deficient
};

// Full eigendecomposition of the operator matrix.  Pairs are sorted by
// (Re lambda, Im lambda) descending, residual as tie-break.  When a trace is
// supplied, vectors are normalized in the trace norm and degenerate clusters
// (|lambda_i - lambda_j| < cluster_tol) are Gram-orthonormalized.
inline EigenDecomposition operator_eigen(const MultOp<Complex>& X,
                                         const TraceFunctional<Complex>* tr = nullptr,
                                         double eps = 1e-8, double cluster_tol = 1e-8) {
  const int n = X.dim();
  Eigen::MatrixXcd M = to_eigen(X.m);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M);
  if (es.info() != Eigen::Success) throw InternalError("eigendecomposition failed");

  EigenDecomposition out;
  double scale = std::max(1.0, X.m.max_abs());
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXcd v = es.eigenvectors().col(k);
    Complex lam = es.eigenvalues()(k);
    double resid = (M * v - lam * v).cwiseAbs().maxCoeff() / std::max(1.0, std::abs(lam));
    out.pairs.push_back({lam, Element<Complex>{X.alg, from_eigen_vec(v)}, resid, false});
  }
  std::sort(out.pairs.begin(), out.pairs.end(), [](const EigenPair& a, const EigenPair& b) {
    if (a.lambda.real() != b.lambda.real()) return a.lambda.real() > b.lambda.real();
    if (a.lambda.imag() != b.lambda.imag()) return a.lambda.imag() > b.lambda.imag();
    return a.residual < b.residual;
  });

  // Numerical rank of the eigenvector matrix decides defectiveness.
  Eigen::MatrixXcd V(n, n);
  for (int k = 0; k < n; ++k) V.col(k) = to_eigen_vec(out.pairs[static_cast<size_t>(k)].vec.v);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(V);
  const auto& sv = svd.singularValues();
  out.defective = sv.size() && sv(sv.size() - 1) <= 1e-8 * sv(0);

  if (tr) {
    Mat<Complex> G = gram_matrix(*tr);
    auto gram_inner = [&](const Vec<Complex>& a, const Vec<Complex>& b) {
      Complex s = 0.0;
      for (int i = 0; i < G.rows; ++i)
        for (int j = 0; j < G.cols; ++j) s += std::conj(a[static_cast<size_t>(i)]) * G(i, j) * b[static_cast<size_t>(j)];
      return s;
    };
    size_t c0 = 0;
    while (c0 < out.pairs.size()) {
      size_t c1 = c0 + 1;
      while (c1 < out.pairs.size() &&
             std::abs(out.pairs[c1].lambda - out.pairs[c0].lambda) < cluster_tol)
        ++c1;
      // modified Gram-Schmidt inside the cluster, in the trace inner product
      for (size_t i = c0; i < c1; ++i) {
        Vec<Complex>& vi = out.pairs[i].vec.v;
        for (size_t j = c0; j < i; ++j) {
          if (out.pairs[j].suspect) continue;
          Complex proj = gram_inner(out.pairs[j].vec.v, vi);
          vi = vec_sub(vi, vec_scale(proj, out.pairs[j].vec.v));
        }
        Complex n2 = gram_inner(vi, vi);
        if (n2.real() <= eps * eps) {
          out.pairs[i].suspect = true;
          out.defective = true;
          continue;
        }
        vi = vec_scale(Complex(1.0 / std::sqrt(n2.real()), 0.0), vi);
      }
      c0 = c1;
    }
    // refresh residuals after renormalization
    for (auto& p : out.pairs) {
      if (p.suspect) continue;
      Eigen::VectorXcd v = to_eigen_vec(p.vec.v);
      p.residual = (M * v - p.lambda * v).cwiseAbs().maxCoeff() /
                   (std::max(1.0, std::abs(p.lambda)) * std::max(1.0, v.cwiseAbs().maxCoeff()));
    }
  }
  (void)scale;
  return out;
}

struct EigenstateReport {
  double basis_residual = 0.0;  // max_B |w(B X) - lambda w(B)|
  double quad_residual = 0.0;   // |w((X - lambda)^* (X - lambda))|
  bool pass = false;
};

// Definition-level eigenstate check of (w, X, lambda) against a full operator
// basis, plus the equivalent quadratic criterion.
inline EigenstateReport eigenstate_check(const State<Complex>& w, const MultOp<Complex>& X,
                                         Complex lambda,
                                         const std::vector<MultOp<Complex>>& op_basis,
                                         double eps = 1e-8) {
  EigenstateReport rep;
  for (const auto& B : op_basis) {
    Complex lhs = w(compose(B, X));
    Complex rhs = lambda * w(B);
    rep.basis_residual = std::max(rep.basis_residual, std::abs(lhs - rhs));
  }
  MultOp<Complex> centered = sub_op(X, scale_op(lambda, identity_op(X.alg)));
  MultOp<Complex> adj = centered.word
                            ? star_op(centered)
                            : trace_adjoint(centered, gram_matrix(detail::state_trace(w)));
  rep.quad_residual = std::abs(w(compose(adj, centered)));
  rep.pass = rep.basis_residual <= eps && rep.quad_residual <= eps;
  return rep;
}

// Normalized vector state attached to a (trace-normalized) eigenvector.
inline State<Complex> eigenvector_state(const TraceFunctional<Complex>& tr,
                                        const Element<Complex>& psi, double eps = 1e-8) {
  return vector_state(tr, psi, /*normalize=*/true, eps);
}

// --- Jordan spectral eigenvectors ------------------------------------------------

// For a Jordan matrix instance: phi = sum_i sqrt(p_i) phi_i phi_i^dagger over
// an orthonormal eigenbasis {phi_i} of the lambda-eigenspace of the underlying
// hermitian matrix of a.  The weights must be nonnegative and sum to the
// underlying matrix dimension (that is what tau(phi^2) = 1 means here); the
// result satisfies a o phi = lambda phi in the algebra.
inline Element<Complex> jordan_spectral_eigen(const Instance<Complex>& inst,
                                              const Element<Complex>& a, double lambda,
                                              const std::vector<double>& p,
                                              double eps = 1e-8) {
  const auto& A = *inst.alg;
  if (A.product != ProductKind::matrix_jordan)
    throw UnsupportedOperation("jordan_spectral_eigen needs a Jordan matrix instance");
  Mat<Complex> am = underlying_matrix(a);
  if (max_abs_diff(am, am.adjoint()) > eps)
    throw ValidationError("element is not an observable (underlying matrix not hermitian)");
  if (p.empty()) throw ValidationError("need at least one weight");
  double psum = 0.0;
  for (double pi : p) {
    if (pi < -eps) throw ValidationError("weights must be nonnegative");
    psum += pi;
  }
  if (std::abs(psum - A.matrix_dim) > eps)
    throw ValidationError("weights must sum to the underlying matrix dimension");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(am));
  if (es.info() != Eigen::Success) throw InternalError("hermitian eigensolve failed");
  std::vector<long> in_space;
  for (long k = 0; k < es.eigenvalues().size(); ++k)
    if (std::abs(es.eigenvalues()(k) - lambda) <= std::max(eps, 1e-8))
      in_space.push_back(k);
  if (in_space.empty()) throw ValidationError("lambda is not an eigenvalue of the element");
  if (p.size() > in_space.size())
    throw ValidationError("more weights than the eigenspace dimension");

  Eigen::MatrixXcd phi = Eigen::MatrixXcd::Zero(A.matrix_dim, A.matrix_dim);
  for (size_t i = 0; i < p.size(); ++i) {
    Eigen::VectorXcd v = es.eigenvectors().col(in_space[i]);
    phi += std::sqrt(std::max(0.0, p[i])) * (v * v.adjoint());
  }
  // back to coefficients: solve sum_mu c_mu basis_matrix[mu] = phi
  const int m = A.matrix_dim;
  Eigen::MatrixXcd B(m * m, A.n);
  for (int mu = 0; mu < A.n; ++mu)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        B(i * m + j, mu) = A.basis_matrices[static_cast<size_t>(mu)](i, j);
  Eigen::VectorXcd rhsv(m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) rhsv(i * m + j) = phi(i, j);
  Eigen::VectorXcd c = B.colPivHouseholderQr().solve(rhsv);
  if ((B * c - rhsv).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, rhsv.cwiseAbs().maxCoeff()))
    throw InternalError("projector does not lie in the span of the basis matrices");
  Element<Complex> out{inst.alg, from_eigen_vec(c)};

  // verify the defining relations before handing it back
  Element<Complex> lhs = multiply(a, out);
  if (max_abs_vec(vec_sub(lhs.v, vec_scale(Complex(lambda, 0.0), out.v))) > 1e-8)
    throw InternalError("spectral eigenvector failed a o phi = lambda phi");
  if (std::abs(ScalarTraits<Complex>::real_to_double(trace_norm2(inst.trace, out)) - 1.0) > 1e-8)
    throw InternalError("spectral eigenvector failed tau(phi^2) = 1");
  return out;
}

}  // namespace naqm
