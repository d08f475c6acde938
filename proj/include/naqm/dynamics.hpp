#pragma once

// Dynamics in both pictures, completely positive maps, and open systems.
//
//   * unitary(H, t) = exp(-i t H / hbar) as a multiplication operator; the
//     generator is an observable, so the exponential is unitary against the
//     trace Gram and obeys the group law.
//   * Schroedinger: psi(t) = U_t |> psi;  i hbar d/dt psi = H |> psi.
//   * Heisenberg:   O(t) = U_t^* o O o U_t  with  U_t^* = U_{-t};
//                   dO/dt = (i/hbar) [H, O].
//   * Krauss families move states:  w'(O) = sum_k w(A_k^* o O o A_k);
//     normalized families (sum A_k^* o A_k = 1) preserve normalization, and
//     jump families (flagged non-normalized) still produce positive maps.
//   * Lindblad generator and the dual (completely positive transformed) state.

#include <cmath>
#include <memory>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "naqm/states.hpp"

namespace naqm {

template <class S>
struct Hamiltonian {
  MultOp<S> op;
  typename ScalarTraits<S>::Real hbar;
};

template <class S>
Hamiltonian<S> make_hamiltonian(const MultOp<S>& op, typename ScalarTraits<S>::Real hbar,
                                const TraceFunctional<S>& tr, double eps = 1e-10) {
  if (!(hbar > 0)) throw ValidationError("hbar must be positive");
  if (observable_residual(op, tr) > eps)
    throw ValidationError("Hamiltonian must be an observable (star-fixed)");
  return {op, hbar};
}

// exp(-i t H / hbar); no word provenance (adjoints of the result go through
// the trace Gram, or through unitary(H, -t) which is the exact inverse).
inline MultOp<Complex> unitary(const Hamiltonian<Complex>& H, double t) {
  Eigen::MatrixXcd gen = to_eigen(H.op.m) * Complex(0.0, -t / H.hbar);
  return {H.op.alg, from_eigen(gen.exp()), std::nullopt};
}

inline Element<Complex> schrodinger_evolve(const Hamiltonian<Complex>& H,
                                           const Element<Complex>& psi0, double t) {
  return act(unitary(H, t), psi0);
}

// Uniform-grid trajectory; one exponential for the step, then repeated action.
inline std::vector<std::pair<double, Element<Complex>>> schrodinger_trajectory(
    const Hamiltonian<Complex>& H, const Element<Complex>& psi0, double t0, double t1,
    int steps) {
  if (steps < 1) throw ValidationError("need at least one step");
  std::vector<std::pair<double, Element<Complex>>> out;
  double dt = (t1 - t0) / steps;
  MultOp<Complex> U0 = unitary(H, t0);
  MultOp<Complex> Ud = unitary(H, dt);
  Element<Complex> psi = act(U0, psi0);
  out.emplace_back(t0, psi);
  for (int k = 1; k <= steps; ++k) {
    psi = act(Ud, psi);
    out.emplace_back(t0 + k * dt, psi);
  }
  return out;
}

// O(t) = U_{-t} o O o U_t (the adjoint of a trace-self-adjoint generator's
// exponential is the reversed-time exponential).
inline MultOp<Complex> heisenberg_evolve(const Hamiltonian<Complex>& H,
                                         const MultOp<Complex>& O, double t) {
  return compose(unitary(H, -t), compose(O, unitary(H, t)));
}

// (i/hbar) [H, O] -- the Heisenberg derivative; exact-mode capable.
template <class S>
MultOp<S> heisenberg_rhs(const Hamiltonian<S>& H, const MultOp<S>& O) {
  S factor = ScalarTraits<S>::i() / S(H.hbar);
  return scale_op(factor, commutator_op(H.op, O));
}

// --- Krauss families --------------------------------------------------------------

template <class S>
struct KraussFamily {
  std::vector<MultOp<S>> ops;
  bool normalized = true;  // false marks a jump family (no completeness claim)
};

namespace detail {

template <class S>
MultOp<S> op_adjoint(const MultOp<S>& X, const TraceFunctional<S>& tr) {
  if (X.word) return star_op(X);
  if constexpr (ScalarTraits<S>::exact)
    throw UnsupportedOperation("adjoint of a provenance-less operator needs float mode");
  else
    return trace_adjoint(X, gram_matrix(tr));
}

}  // namespace detail

// max-norm residual of sum_k A_k^* o A_k = identity
template <class S>
double krauss_normalization_residual(const KraussFamily<S>& F, const TraceFunctional<S>& tr) {
  if (F.ops.empty()) throw ValidationError("empty operator family");
  Mat<S> acc(F.ops[0].dim(), F.ops[0].dim());
  for (const auto& A : F.ops) acc = acc + (detail::op_adjoint(A, tr).m * A.m);
  return max_abs_diff(acc, Mat<S>::identity(F.ops[0].dim()));
}

// Pushforward of a state through the family.  Normalized families are checked
// against the completeness relation; in every case the result must evaluate to
// 1 on the identity (which for jump-family inputs is a genuine restriction).
template <class S>
State<S> krauss_map(const KraussFamily<S>& F, const State<S>& w, double eps = 1e-8) {
  if (F.ops.empty()) throw ValidationError("empty operator family");
  const TraceFunctional<S>& tr = detail::state_trace(w);
  if (F.normalized && krauss_normalization_residual(F, tr) > eps)
    throw ValidationError("operator family violates the completeness relation");
  State<S> out;
  out.kind = State<S>::Kind::composite;
  out.base = std::make_shared<State<S>>(w);
  out.family = F.ops;
  for (const auto& A : F.ops) out.family_adj.push_back(detail::op_adjoint(A, tr));
  double nrm = std::abs(ScalarTraits<S>::real_to_double(
                   ScalarTraits<S>::real(out(identity_op(F.ops[0].alg)))) - 1.0);
  if (nrm > eps)
    throw ValidationError("transformed functional is not normalized (w'(1) != 1)");
  return out;
}

// rho' = sum_k (A_k |> psi)(A_k |> psi)^*
template <class S>
Element<S> krauss_density(const KraussFamily<S>& F, const TraceFunctional<S>& tr,
                          const Element<S>& psi, double eps = 1e-8) {
  if (F.ops.empty()) throw ValidationError("empty operator family");
  Element<S> rho = zero_element(psi.alg);
  for (const auto& A : F.ops) {
    Element<S> ap = act(A, psi);
    rho = rho + multiply(ap, star(ap));
  }
  if (max_abs_vec(vec_sub(star(rho).v, rho.v)) > eps)
    throw InternalError("transformed density is not star-fixed");
  (void)tr;
  return rho;
}

// --- Lindblad ---------------------------------------------------------------------

// dO/dt = (i/hbar)[H,O] + sum_k ( L_k^* o O o L_k - (1/2){ L_k^* o L_k , O } )
template <class S>
MultOp<S> lindblad_rhs(const Hamiltonian<S>& H, const KraussFamily<S>& jumps,
                       const MultOp<S>& O, const TraceFunctional<S>& tr) {
  MultOp<S> acc = heisenberg_rhs(H, O);
  const S half = ScalarTraits<S>::from_ratio(1, 2);
  for (const auto& L : jumps.ops) {
    MultOp<S> Ls = detail::op_adjoint(L, tr);
    MultOp<S> gain = compose(Ls, compose(O, L));
    MultOp<S> loss = scale_op(half, anticommutator_op(compose(Ls, L), O));
    acc = add_op(acc, sub_op(gain, loss));
  }
  return acc;
}

// --- dual state of a completely positive map ---------------------------------------

// mu(b) = sum_k tau( (bhat o ahat_k o psihat o psihat^* o ahat_k^* o bhat^*) |> 1 ),
// with every factor the left-embedding of an algebra element.  Always real and
// nonnegative: each term is a squared trace norm.
template <class S>
struct DualState {
  TraceFunctional<S> trace;
  Element<S> psi;
  std::vector<Element<S>> family;

  typename ScalarTraits<S>::Real operator()(const Element<S>& b) const {
    MultOp<S> bh = left_op(b);
    MultOp<S> bsh = left_op(star(b));
    MultOp<S> ph = left_op(psi);
    MultOp<S> psh = left_op(star(psi));
    S acc = ScalarTraits<S>::zero();
    for (const auto& a : family) {
      MultOp<S> ah = left_op(a);
      MultOp<S> ash = left_op(star(a));
      MultOp<S> X = compose(bh, compose(ah, compose(ph, compose(psh, compose(ash, bsh)))));
      acc += trace.eval_coeffs(X.m.apply(trace.alg->unit));
    }
    double im = std::abs(ScalarTraits<S>::real_to_double(ScalarTraits<S>::imag(acc)));
    if (im > 1e-9 * std::max(1.0, abs_s(acc)))
      throw InternalError("dual state evaluated non-real");
    return ScalarTraits<S>::real(acc);
  }
};

template <class S>
DualState<S> dual_state(const TraceFunctional<S>& tr, const Element<S>& psi,
                        const std::vector<Element<S>>& family) {
  if (family.empty()) throw ValidationError("empty operator family");
  return {tr, psi, family};
}

}  // namespace naqm
