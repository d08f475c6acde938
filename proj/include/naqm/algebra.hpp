#pragma once

// Finite-dimensional unital *-algebras given by structure constants.  Nothing
// here assumes associativity or commutativity: an algebra is a coefficient
// space C^n, a product tensor c[mu][nu][rho] with
//
//     e_mu e_nu = sum_rho c[mu][nu][rho] e_rho,
//
// an antilinear involution fixed by its action on the basis,
//
//     (e_mu)^* = sum_nu star(mu,nu) e_nu,
//
// and a distinguished unit element (a coefficient vector; the unit need not be
// a basis vector, e.g. for matrix-unit bases where the identity is a sum).

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "naqm/matrix.hpp"

namespace naqm {

// How a basis element multiplies: provenance tag for instances that are backed
// by honest matrices (needed by operations that must reach through to the
// underlying associative product, like the quarter-double-commutator check).
enum class ProductKind { generic, matrix_ordinary, matrix_jordan };

template <class S>
struct AlgebraSpec {
  int n = 0;                       // dimension as a vector space
  std::vector<S> c;                // structure constants, index (mu*n + nu)*n + rho
  Mat<S> star_m;                   // star action on the basis (row mu = coefficients of e_mu^*)
  Vec<S> unit;                     // coefficients of the algebra unit
  std::optional<int> unit_index;   // set when the unit is a single basis vector
  std::vector<std::string> labels;
  std::string label;

  ProductKind product = ProductKind::generic;
  int matrix_dim = 0;              // underlying matrix size when matrix-backed
  std::vector<Mat<S>> basis_matrices;  // underlying matrices per basis element (matrix-backed only)

  // Cached multiplication operators: lmul[mu] is the matrix of x -> e_mu x on
  // coefficients, rmul[mu] of x -> x e_mu.  Filled by finalize().
  std::vector<Mat<S>> lmul, rmul;

  const S& sc(int mu, int nu, int rho) const {
    return c[(static_cast<size_t>(mu) * n + nu) * n + rho];
  }
  S& sc(int mu, int nu, int rho) {
    return c[(static_cast<size_t>(mu) * n + nu) * n + rho];
  }

  void finalize() {
    if (n <= 0) throw ValidationError("algebra dimension must be positive");
    if (c.size() != static_cast<size_t>(n) * n * n)
      throw ValidationError("structure constant tensor has the wrong size");
    if (star_m.rows != n || star_m.cols != n)
      throw ValidationError("star matrix must be n x n");
    if (unit.size() != static_cast<size_t>(n))
      throw ValidationError("unit vector must have length n");
    if (labels.empty()) {
      labels.resize(n);
      for (int i = 0; i < n; ++i) labels[i] = "e" + std::to_string(i);
    }
    lmul.assign(n, Mat<S>(n, n));
    rmul.assign(n, Mat<S>(n, n));
    for (int mu = 0; mu < n; ++mu)
      for (int nu = 0; nu < n; ++nu)
        for (int rho = 0; rho < n; ++rho) {
          lmul[mu](rho, nu) = sc(mu, nu, rho);  // column nu of lmul[mu] = e_mu e_nu
          rmul[mu](rho, nu) = sc(nu, mu, rho);  // column nu of rmul[mu] = e_nu e_mu
        }
    // the declared unit has to multiply as one from both sides,
    Mat<S> lu(n, n), ru(n, n);
    for (int mu = 0; mu < n; ++mu) {
      lu = lu + unit[mu] * lmul[mu];
      ru = ru + unit[mu] * rmul[mu];
    }
    Mat<S> id = Mat<S>::identity(n);
    if (max_abs_diff(lu, id) > 1e-9 || max_abs_diff(ru, id) > 1e-9)
      throw ValidationError("declared unit is not a two-sided unit");
    // and star has to square to the identity on the basis.
    if (max_abs_diff(star_m.conjugate() * star_m, id) > 1e-9)
      throw ValidationError("star matrix is not an involution");
  }
};

template <class S>
using AlgebraPtr = std::shared_ptr<const AlgebraSpec<S>>;

template <class S>
struct Element {
  AlgebraPtr<S> alg;
  Vec<S> v;

  Element() = default;
  Element(AlgebraPtr<S> a, Vec<S> coeffs) : alg(std::move(a)), v(std::move(coeffs)) {
    if (!alg) throw ValidationError("element needs an algebra");
    if (v.size() != static_cast<size_t>(alg->n))
      throw ValidationError("coefficient vector length does not match the algebra dimension");
  }

  friend Element operator+(const Element& x, const Element& y) {
    check_same(x, y);
    return {x.alg, vec_add(x.v, y.v)};
  }
  friend Element operator-(const Element& x, const Element& y) {
    check_same(x, y);
    return {x.alg, vec_sub(x.v, y.v)};
  }
  friend Element operator*(const S& s, const Element& x) { return {x.alg, vec_scale(s, x.v)}; }
  friend Element operator-(const Element& x) {
    return {x.alg, vec_scale(-ScalarTraits<S>::one(), x.v)};
  }

  static void check_same(const Element& x, const Element& y) {
    if (x.alg.get() != y.alg.get())
      throw ValidationError("elements live in different algebras");
  }
};

template <class S>
Element<S> basis_element(const AlgebraPtr<S>& alg, int mu) {
  if (mu < 0 || mu >= alg->n) throw ValidationError("basis index out of range");
  Vec<S> v(alg->n, ScalarTraits<S>::zero());
  v[mu] = ScalarTraits<S>::one();
  return {alg, std::move(v)};
}

template <class S>
Element<S> unit_element(const AlgebraPtr<S>& alg) {
  return {alg, alg->unit};
}

template <class S>
Element<S> zero_element(const AlgebraPtr<S>& alg) {
  return {alg, Vec<S>(alg->n, ScalarTraits<S>::zero())};
}

// Product in the algebra (bilinear, no associativity assumed anywhere).
template <class S>
Element<S> multiply(const Element<S>& x, const Element<S>& y) {
  Element<S>::check_same(x, y);
  const auto& A = *x.alg;
  Vec<S> r(A.n, ScalarTraits<S>::zero());
  for (int mu = 0; mu < A.n; ++mu) {
    if (is_zero_s(x.v[mu], 0.0)) continue;
    for (int nu = 0; nu < A.n; ++nu) {
      if (is_zero_s(y.v[nu], 0.0)) continue;
      S f = x.v[mu] * y.v[nu];
      for (int rho = 0; rho < A.n; ++rho) {
        const S& cc = A.sc(mu, nu, rho);
        if (!is_zero_s(cc, 0.0)) r[rho] += f * cc;
      }
    }
  }
  return {x.alg, std::move(r)};
}

// Antilinear involution: star(a)_nu = sum_mu conj(a_mu) star(mu,nu).
template <class S>
Element<S> star(const Element<S>& x) {
  const auto& A = *x.alg;
  Vec<S> r(A.n, ScalarTraits<S>::zero());
  for (int mu = 0; mu < A.n; ++mu) {
    S cm = conj_s(x.v[mu]);
    if (is_zero_s(cm, 0.0)) continue;
    for (int nu = 0; nu < A.n; ++nu) r[nu] += cm * A.star_m(mu, nu);
  }
  return {x.alg, std::move(r)};
}

template <class S>
Element<S> associator(const Element<S>& a, const Element<S>& b, const Element<S>& c) {
  return multiply(multiply(a, b), c) - multiply(a, multiply(b, c));
}

template <class S>
Element<S> commutator_el(const Element<S>& a, const Element<S>& b) {
  return multiply(a, b) - multiply(b, a);
}

// [a,[b,c]] + [c,[a,b]] + [b,[c,a]]
template <class S>
Element<S> jacobiator(const Element<S>& a, const Element<S>& b, const Element<S>& c) {
  return commutator_el(a, commutator_el(b, c)) + commutator_el(c, commutator_el(a, b)) +
         commutator_el(b, commutator_el(c, a));
}

// Reconstruct the underlying matrix of an element of a matrix-backed instance.
template <class S>
Mat<S> underlying_matrix(const Element<S>& x) {
  const auto& A = *x.alg;
  if (A.product == ProductKind::generic || A.basis_matrices.empty())
    throw UnsupportedOperation("instance is not matrix-backed");
  Mat<S> m(A.matrix_dim, A.matrix_dim);
  for (int mu = 0; mu < A.n; ++mu) {
    if (is_zero_s(x.v[mu], 0.0)) continue;
    m = m + x.v[mu] * A.basis_matrices[mu];
  }
  return m;
}

// ---------------------------------------------------------------------------
// Axiom checking.  Never throws on a violation; returns a report with the
// worst residual per axiom so callers can print/serialize it.
// ---------------------------------------------------------------------------

struct AxiomCheck {
  std::string name;
  bool pass = false;
  double residual = 0.0;  // worst violation seen (0 in exact mode when passing)
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

template <class S>
AxiomReport check_algebra_axioms(const AlgebraPtr<S>& alg, double eps = 1e-10) {
  const auto& A = *alg;
  AxiomReport rep;
  auto run = [&](const std::string& name, double resid) {
    rep.checks.push_back({name, resid <= eps, resid});
  };

  Element<S> one = unit_element(alg);
  double r_unit = 0.0;
  for (int mu = 0; mu < A.n; ++mu) {
    Element<S> b = basis_element(alg, mu);
    r_unit = std::max(r_unit, max_abs_vec(vec_sub(multiply(one, b).v, b.v)));
    r_unit = std::max(r_unit, max_abs_vec(vec_sub(multiply(b, one).v, b.v)));
  }
  run("unit acts as identity", r_unit);

  // star(star(a)) = a on the basis reduces to conj(S) * S = Id.
  double r_inv = max_abs_diff(A.star_m.conjugate() * A.star_m, Mat<S>::identity(A.n));
  run("star is an involution", r_inv);

  double r_anti = 0.0;
  for (int mu = 0; mu < A.n; ++mu)
    for (int nu = 0; nu < A.n; ++nu) {
      Element<S> lhs = star(multiply(basis_element(alg, mu), basis_element(alg, nu)));
      Element<S> rhs = multiply(star(basis_element(alg, nu)), star(basis_element(alg, mu)));
      r_anti = std::max(r_anti, max_abs_vec(vec_sub(lhs.v, rhs.v)));
    }
  run("star reverses products", r_anti);

  double r_ustar = max_abs_vec(vec_sub(star(one).v, one.v));
  run("unit is star-fixed", r_ustar);

  return rep;
}

}  // namespace naqm
