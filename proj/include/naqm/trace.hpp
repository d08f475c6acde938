#pragma once

// Trace functionals on a nonassociative *-algebra and their axioms:
//
//   positivity     tau(a^* a) >= 0   (the Gram form tau(e_mu^* e_nu) is PSD)
//   normalization  tau(1) = 1
//   2-cyclicity    tau(ab) = tau(ba)
//   3-cyclicity    tau(a(bc)) = tau(c(ab))
//
// Without associativity a trace does not see all parenthesizations alike;
// bracketing_classes enumerates every full bracketing of a product and groups
// the trace values, which the cyclicity axioms squeeze down from the Catalan
// number C_{k-1} of bracketings to at most C_{k-2} distinct values.

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "naqm/algebra.hpp"

namespace naqm {

template <class S>
struct TraceFunctional {
  AlgebraPtr<S> alg;
  Vec<S> t;  // covector on the algebra basis

  S operator()(const Element<S>& a) const {
    if (a.alg.get() != alg.get()) throw ValidationError("element from a different algebra");
    return dot(t, a.v);
  }
  S eval_coeffs(const Vec<S>& v) const { return dot(t, v); }
};

// Gram form of the trace: G(mu,nu) = tau(e_mu^* e_nu).
template <class S>
Mat<S> gram_matrix(const TraceFunctional<S>& tr) {
  const auto& A = *tr.alg;
  Mat<S> g(A.n, A.n);
  for (int mu = 0; mu < A.n; ++mu) {
    Element<S> smu = star(basis_element(tr.alg, mu));
    for (int nu = 0; nu < A.n; ++nu)
      g(mu, nu) = tr(multiply(smu, basis_element(tr.alg, nu)));
  }
  return g;
}

namespace detail {

// Exact positive-semidefiniteness of a Hermitian matrix by fraction-free-ish
// LDL elimination: pivots must be nonnegative, and a zero pivot forces a zero
// row.  Exact scalars only.
template <class S>
bool exact_psd(Mat<S> g) {
  static_assert(ScalarTraits<S>::exact);
  const int n = g.rows;
  for (int k = 0; k < n; ++k) {
    S d = g(k, k);
    if (!(ScalarTraits<S>::imag(d) == 0)) return false;
    auto dre = ScalarTraits<S>::real(d);
    if (dre < 0) return false;
    if (dre == 0) {
      for (int j = k; j < n; ++j)
        if (!is_zero_s(g(k, j), 0.0)) return false;
      continue;
    }
    for (int i = k + 1; i < n; ++i) {
      if (is_zero_s(g(i, k), 0.0)) continue;
      S f = g(i, k) / d;
      for (int j = k + 1; j < n; ++j) g(i, j) -= f * conj_s(g(j, k));
    }
  }
  return true;
}

inline double min_eigenvalue_hermitian(const Mat<Complex>& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(g), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace detail

template <class S>
AxiomReport check_trace_axioms(const TraceFunctional<S>& tr, double eps = 1e-10) {
  const auto& A = *tr.alg;
  AxiomReport rep;
  auto push = [&](const std::string& name, bool pass, double resid) {
    rep.checks.push_back({name, pass, resid});
  };

  double r_norm = abs_s<S>(tr.eval_coeffs(A.unit) - ScalarTraits<S>::one());
  push("normalized: trace(1) = 1", r_norm <= eps, r_norm);

  double r2 = 0.0;
  for (int mu = 0; mu < A.n; ++mu)
    for (int nu = 0; nu < A.n; ++nu) {
      Element<S> emu = basis_element(tr.alg, mu), enu = basis_element(tr.alg, nu);
      r2 = std::max(r2, abs_s<S>(tr(multiply(emu, enu)) - tr(multiply(enu, emu))));
    }
  push("2-cyclic: trace(ab) = trace(ba)", r2 <= eps, r2);

  double r3 = 0.0;
  for (int mu = 0; mu < A.n; ++mu)
    for (int nu = 0; nu < A.n; ++nu)
      for (int rho = 0; rho < A.n; ++rho) {
        Element<S> a = basis_element(tr.alg, mu);
        Element<S> b = basis_element(tr.alg, nu);
        Element<S> c = basis_element(tr.alg, rho);
        r3 = std::max(r3, abs_s<S>(tr(multiply(a, multiply(b, c))) -
                                   tr(multiply(c, multiply(a, b)))));
      }
  push("3-cyclic: trace(a(bc)) = trace(c(ab))", r3 <= eps, r3);

  Mat<S> g = gram_matrix(tr);
  double r_herm = max_abs_diff(g, g.adjoint());
  push("gram form is hermitian", r_herm <= eps, r_herm);

  if constexpr (ScalarTraits<S>::exact) {
    bool psd = r_herm == 0.0 && detail::exact_psd(g);
    push("positive: gram form is PSD", psd, psd ? 0.0 : 1.0);
  } else {
    double lam_min = detail::min_eigenvalue_hermitian(g);
    double bound = eps * std::max(1.0, g.max_abs());
    push("positive: gram form is PSD", lam_min >= -bound, std::max(0.0, -lam_min));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Bracketings of a_1 a_2 ... a_k.
// ---------------------------------------------------------------------------

inline std::uint64_t catalan(int k) {
  // C_0..C_k by the recurrence; k stays tiny here.
  std::vector<std::uint64_t> c(static_cast<size_t>(k) + 1, 0);
  c[0] = 1;
  for (int i = 1; i <= k; ++i)
    for (int j = 0; j < i; ++j) c[i] += c[j] * c[i - 1 - j];
  return c[static_cast<size_t>(k)];
}

struct BracketTree {
  int leaf = -1;  // >= 0 for leaves
  std::shared_ptr<const BracketTree> l, r;
};

inline std::vector<std::shared_ptr<const BracketTree>> enumerate_bracketings(int lo, int hi) {
  std::vector<std::shared_ptr<const BracketTree>> out;
  if (hi - lo == 1) {
    auto n = std::make_shared<BracketTree>();
    n->leaf = lo;
    out.push_back(n);
    return out;
  }
  for (int mid = lo + 1; mid < hi; ++mid)
    for (const auto& left : enumerate_bracketings(lo, mid))
      for (const auto& right : enumerate_bracketings(mid, hi)) {
        auto n = std::make_shared<BracketTree>();
        n->l = left;
        n->r = right;
        out.push_back(n);
      }
  return out;
}

inline std::vector<std::shared_ptr<const BracketTree>> enumerate_bracketings(int k) {
  return enumerate_bracketings(0, k);
}

template <class S>
Element<S> eval_bracketing(const BracketTree& t, const std::vector<Element<S>>& xs) {
  if (t.leaf >= 0) return xs[static_cast<size_t>(t.leaf)];
  return multiply(eval_bracketing(*t.l, xs), eval_bracketing(*t.r, xs));
}

inline std::string bracketing_to_string(const BracketTree& t) {
  if (t.leaf >= 0) return "a" + std::to_string(t.leaf + 1);
  return "(" + bracketing_to_string(*t.l) + bracketing_to_string(*t.r) + ")";
}

template <class S>
struct BracketingReport {
  std::vector<std::string> forms;       // printable bracketings, enumeration order
  std::vector<S> values;                // trace value per bracketing
  std::vector<int> class_of;            // class id per bracketing
  int distinct = 0;                     // number of distinct trace values
  std::uint64_t catalan_bracketings = 0;  // C_{k-1}
  std::uint64_t catalan_bound = 0;        // C_{k-2}, the cyclicity ceiling (k >= 2)
};

// Evaluate the trace over every full bracketing of xs and group equal values.
template <class S>
BracketingReport<S> bracketing_classes(const TraceFunctional<S>& tr,
                                       const std::vector<Element<S>>& xs,
                                       double eps = 1e-8) {
  const int k = static_cast<int>(xs.size());
  if (k < 1) throw ValidationError("bracketing_classes needs at least one factor");
  BracketingReport<S> rep;
  rep.catalan_bracketings = catalan(k - 1);
  rep.catalan_bound = k >= 2 ? catalan(k - 2) : 1;
  auto trees = enumerate_bracketings(k);
  for (const auto& t : trees) {
    rep.forms.push_back(bracketing_to_string(*t));
    rep.values.push_back(tr(eval_bracketing(*t, xs)));
  }
  rep.class_of.assign(rep.values.size(), -1);
  std::vector<S> reps;
  for (size_t i = 0; i < rep.values.size(); ++i) {
    for (size_t c = 0; c < reps.size(); ++c) {
      if (is_zero_s<S>(rep.values[i] - reps[c], eps)) {
        rep.class_of[i] = static_cast<int>(c);
        break;
      }
    }
    if (rep.class_of[i] < 0) {
      rep.class_of[i] = static_cast<int>(reps.size());
      reps.push_back(rep.values[i]);
    }
  }
  rep.distinct = static_cast<int>(reps.size());
  return rep;
}

// Left and right combs agree under a cyclic trace:
//   trace(a1(a2(...ak))) = trace(((a1 a2)...)ak).
template <class S>
double trace_comb_identity_residual(const TraceFunctional<S>& tr,
                                    const std::vector<Element<S>>& xs) {
  Element<S> right = xs.back();
  for (int i = static_cast<int>(xs.size()) - 2; i >= 0; --i) right = multiply(xs[static_cast<size_t>(i)], right);
  Element<S> left = xs.front();
  for (size_t i = 1; i < xs.size(); ++i) left = multiply(left, xs[i]);
  return abs_s<S>(tr(right) - tr(left));
}

}  // namespace naqm
