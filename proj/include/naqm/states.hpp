#pragma once

// States on the operator algebra: positive normalized linear functionals
// evaluated on multiplication operators.  Stored by construction recipe:
//
//   tracial    w(X) = tau(X |> 1)
//   vector     w(X) = tau(psi^* (X |> psi)),  tau(psi^* psi) = 1
//   mixed      convex combination of vector states
//   raw        coefficients against a closed operator-subalgebra basis
//   composite  pushforward of a base state through an operator family
//              (produced by the dynamics layer; kept so the result stays
//              evaluable on arbitrary operators)
//
// plus expectation/uncertainty and the state-level checks: normalization,
// conjugation symmetry, Cauchy-Schwartz, positivity spot checks.

#include <cmath>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "naqm/enveloping.hpp"
#include "naqm/trace.hpp"

namespace naqm {

template <class S>
class State {
 public:
  enum class Kind { tracial, vector, mixed, raw, composite };

  Kind kind = Kind::tracial;
  TraceFunctional<S> trace;          // tracial / vector / mixed
  std::vector<Element<S>> psis;      // vector (1 entry) / mixed
  std::vector<S> probs;              // mixed weights
  std::shared_ptr<const GeneratedSubalgebra<S>> op_basis;  // raw
  Vec<S> values;                     // raw functional values per basis op
  std::shared_ptr<const State> base;                       // composite
  std::vector<MultOp<S>> family, family_adj;               // composite

  S operator()(const MultOp<S>& X) const {
    switch (kind) {
      case Kind::tracial:
        return trace.eval_coeffs(X.m.apply(trace.alg->unit));
      case Kind::vector:
        return eval_vector(psis[0], X);
      case Kind::mixed: {
        S acc = ScalarTraits<S>::zero();
        for (size_t l = 0; l < psis.size(); ++l) acc += probs[l] * eval_vector(psis[l], X);
        return acc;
      }
      case Kind::raw: {
        if constexpr (ScalarTraits<S>::exact) {
          throw UnsupportedOperation("raw states are float-mode only");
        } else {
          Vec<S> coords = coordinates_in_basis(*op_basis, X);
          return dot(values, coords);
        }
      }
      case Kind::composite: {
        S acc = ScalarTraits<S>::zero();
        for (size_t k = 0; k < family.size(); ++k)
          acc += (*base)(compose(family_adj[k], compose(X, family[k])));
        return acc;
      }
    }
    throw InternalError("unreachable state kind");
  }

  const AlgebraPtr<S>& algebra() const {
    switch (kind) {
      case Kind::raw: return op_basis->alg;
      case Kind::composite: return base->algebra();
      default: return trace.alg;
    }
  }

 private:
  S eval_vector(const Element<S>& psi, const MultOp<S>& X) const {
    return trace(multiply(star(psi), act(X, psi)));
  }
};

// --- constructors -------------------------------------------------------------

template <class S>
State<S> tracial_state(const TraceFunctional<S>& tr) {
  State<S> w;
  w.kind = State<S>::Kind::tracial;
  w.trace = tr;
  return w;
}

// Squared trace norm tau(psi^* psi); must come out real and nonnegative for a
// positive trace.
template <class S>
typename ScalarTraits<S>::Real trace_norm2(const TraceFunctional<S>& tr, const Element<S>& psi) {
  S v = tr(multiply(star(psi), psi));
  double im = std::abs(ScalarTraits<S>::real_to_double(ScalarTraits<S>::imag(v)));
  if (im > 1e-10 * std::max(1.0, abs_s(v)))
    throw ValidationError("trace norm came out non-real; trace is not positive here");
  return ScalarTraits<S>::real(v);
}

template <class S>
State<S> vector_state(const TraceFunctional<S>& tr, const Element<S>& psi,
                      bool normalize = false, double eps = 1e-10) {
  Element<S> p = psi;
  auto n2 = trace_norm2(tr, p);
  if (normalize) {
    if constexpr (ScalarTraits<S>::exact) {
      throw UnsupportedOperation("auto-normalization needs float mode (square roots)");
    } else {
      if (n2 <= eps) throw ValidationError("cannot normalize a null vector");
      p = S(1.0 / std::sqrt(n2), 0.0) * p;
      n2 = trace_norm2(tr, p);
    }
  }
  if (std::abs(ScalarTraits<S>::real_to_double(n2) - 1.0) > eps)
    throw ValidationError("vector state needs a normalized vector: tau(psi^* psi) = 1");
  State<S> w;
  w.kind = State<S>::Kind::vector;
  w.trace = tr;
  w.psis = {p};
  return w;
}

template <class S>
State<S> mixed_state(const TraceFunctional<S>& tr, const std::vector<S>& probs,
                     const std::vector<Element<S>>& psis, double eps = 1e-10) {
  if (probs.size() != psis.size() || probs.empty())
    throw ValidationError("mixed state needs matching nonempty probabilities and vectors");
  S total = ScalarTraits<S>::zero();
  for (const S& p : probs) {
    double im = std::abs(ScalarTraits<S>::real_to_double(ScalarTraits<S>::imag(p)));
    double re = ScalarTraits<S>::real_to_double(ScalarTraits<S>::real(p));
    if (im > eps || re < -eps) throw ValidationError("probabilities must be real and nonnegative");
    total += p;
  }
  if (abs_s<S>(total - ScalarTraits<S>::one()) > eps)
    throw ValidationError("probabilities must sum to 1");
  for (const auto& psi : psis)
    if (std::abs(ScalarTraits<S>::real_to_double(trace_norm2(tr, psi)) - 1.0) > eps)
      throw ValidationError("every component vector must be normalized");
  State<S> w;
  w.kind = State<S>::Kind::mixed;
  w.trace = tr;
  w.probs = probs;
  w.psis = psis;
  return w;
}

inline State<Complex> raw_state(std::shared_ptr<const GeneratedSubalgebra<Complex>> basis,
                                Vec<Complex> values) {
  if (!basis || values.size() != static_cast<size_t>(basis->dim()))
    throw ValidationError("raw state needs one value per basis operator");
  State<Complex> w;
  w.kind = State<Complex>::Kind::raw;
  w.op_basis = std::move(basis);
  w.values = std::move(values);
  return w;
}

// --- expectation / uncertainty -------------------------------------------------

// Residual of the observability condition star(X) = X.  Uses word provenance
// when present; otherwise falls back to the trace-Gram adjoint (float mode),
// which matches the provenance star on a faithful tracial representation.
template <class S>
double observable_residual(const MultOp<S>& X, const TraceFunctional<S>& tr) {
  if (X.word) return max_abs_diff(star_op(X).m, X.m);
  if constexpr (ScalarTraits<S>::exact)
    throw UnsupportedOperation("observability of a provenance-less operator needs float mode");
  else
    return max_abs_diff(trace_adjoint(X, gram_matrix(tr)).m, X.m);
}

template <class S>
S expectation(const State<S>& w, const MultOp<S>& X) {
  return w(X);
}

namespace detail {
template <class S>
const TraceFunctional<S>& state_trace(const State<S>& w) {
  const State<S>* s = &w;
  while (s->kind == State<S>::Kind::composite) s = s->base.get();
  if (s->kind == State<S>::Kind::raw)
    throw UnsupportedOperation("raw states carry no trace functional");
  return s->trace;
}
}  // namespace detail

template <class S>
double uncertainty(const State<S>& w, const MultOp<S>& O, double eps = 1e-10) {
  if (observable_residual(O, detail::state_trace(w)) > eps)
    throw ValidationError("uncertainty is defined for observables (star-fixed operators)");
  S mean = w(O);
  double mean_im = std::abs(ScalarTraits<S>::real_to_double(ScalarTraits<S>::imag(mean)));
  if (mean_im > eps) throw ValidationError("observable expectation came out non-real");
  MultOp<S> centered = sub_op(O, scale_op(S(ScalarTraits<S>::real(mean)), identity_op(O.alg)));
  S var = w(compose(centered, centered));
  double var_re = ScalarTraits<S>::real_to_double(ScalarTraits<S>::real(var));
  double var_im = std::abs(ScalarTraits<S>::real_to_double(ScalarTraits<S>::imag(var)));
  if (var_im > eps || var_re < -eps)
    throw ValidationError("variance came out negative or non-real; state is not positive here");
  return std::sqrt(std::max(0.0, var_re));
}

struct UncertaintyRelation {
  double delta1 = 0, delta2 = 0;
  double lhs = 0;    // delta1 * delta2
  double rhs = 0;    // |<[O1,O2]>| / 2
  double slack = 0;  // lhs - rhs
  bool holds = false;
};

template <class S>
UncertaintyRelation check_uncertainty_relation(const State<S>& w, const MultOp<S>& O1,
                                               const MultOp<S>& O2, double eps = 1e-10) {
  UncertaintyRelation r;
  r.delta1 = uncertainty(w, O1, eps);
  r.delta2 = uncertainty(w, O2, eps);
  r.lhs = r.delta1 * r.delta2;
  r.rhs = 0.5 * abs_s(w(commutator_op(O1, O2)));
  r.slack = r.lhs - r.rhs;
  r.holds = r.slack >= -eps;
  return r;
}

// |w(X^* Y)|^2 <= w(X^* X) w(Y^* Y); X, Y need star (word provenance).
template <class S>
bool cauchy_schwartz_check(const State<S>& w, const MultOp<S>& X, const MultOp<S>& Y,
                           double eps = 1e-10) {
  MultOp<S> xs = star_op(X), ys = star_op(Y);
  double lhs = abs_s(w(compose(xs, Y)));
  double a = ScalarTraits<S>::real_to_double(ScalarTraits<S>::real(w(compose(xs, X))));
  double b = ScalarTraits<S>::real_to_double(ScalarTraits<S>::real(w(compose(ys, Y))));
  return lhs * lhs <= a * b + eps * std::max(1.0, a * b);
}

// --- state axioms ---------------------------------------------------------------

// Pseudorandom operator with word provenance: a short random word in the left
// and right basis generators with small rational weights.  Deterministic in
// the seed; works in both scalar modes.
template <class S>
MultOp<S> random_word_op(const AlgebraPtr<S>& alg, std::mt19937_64& rng, int max_len = 2) {
  std::uniform_int_distribution<int> coin(0, 1), idx(0, alg->n - 1), len(0, max_len),
      num(-8, 8);
  auto rand_scalar = [&]() {
    S re = ScalarTraits<S>::from_ratio(num(rng), 4);
    S im = ScalarTraits<S>::from_ratio(num(rng), 4);
    return re + ScalarTraits<S>::i() * im;
  };
  int terms = 1 + coin(rng);
  MultOp<S> acc = scale_op(ScalarTraits<S>::zero(), identity_op(alg));
  for (int t = 0; t < terms; ++t) {
    MultOp<S> term = identity_op(alg);
    int l = len(rng);
    for (int f = 0; f < l; ++f) {
      Element<S> b = basis_element(alg, idx(rng));
      term = compose(term, coin(rng) ? left_op(b) : right_op(b));
    }
    acc = add_op(acc, scale_op(rand_scalar(), term));
  }
  return acc;
}

// Normalization, conjugation symmetry, Cauchy-Schwartz, positivity -- the
// last three spot-checked on pseudorandom word operators.
template <class S>
AxiomReport check_state(const State<S>& w, double eps = 1e-8, int samples = 100,
                        std::uint64_t seed = 0x5eed) {
  AxiomReport rep;
  const AlgebraPtr<S>& alg = w.algebra();
  double r_norm = abs_s<S>(w(identity_op(alg)) - ScalarTraits<S>::one());
  rep.checks.push_back({"normalized: w(1) = 1", r_norm <= eps, r_norm});

  std::mt19937_64 rng(seed);
  double r_pos = 0.0, r_sym = 0.0, r_cs = 0.0;
  for (int s = 0; s < samples; ++s) {
    MultOp<S> X = random_word_op(alg, rng);
    MultOp<S> Y = random_word_op(alg, rng);
    MultOp<S> xs = star_op(X), ys = star_op(Y);
    S pxx = w(compose(xs, X));
    r_pos = std::max(r_pos, std::abs(ScalarTraits<S>::real_to_double(ScalarTraits<S>::imag(pxx))));
    r_pos = std::max(r_pos, std::max(0.0, -ScalarTraits<S>::real_to_double(ScalarTraits<S>::real(pxx))));
    S xy = w(compose(xs, Y));
    S yx = w(compose(ys, X));
    r_sym = std::max(r_sym, abs_s<S>(xy - conj_s(yx)));
    double a = ScalarTraits<S>::real_to_double(ScalarTraits<S>::real(pxx));
    double b = ScalarTraits<S>::real_to_double(ScalarTraits<S>::real(w(compose(ys, Y))));
    double lhs = abs_s(xy);
    r_cs = std::max(r_cs, (lhs * lhs - a * b) / std::max(1.0, a * b));
  }
  rep.checks.push_back({"positive on sampled X^* X", r_pos <= eps, r_pos});
  rep.checks.push_back({"conjugation symmetry on samples", r_sym <= eps, r_sym});
  rep.checks.push_back({"Cauchy-Schwartz on samples", r_cs <= eps, std::max(0.0, r_cs)});
  return rep;
}

// --- densities -------------------------------------------------------------------

template <class S>
struct DensityElement {
  Element<S> rho;
  std::vector<S> probs;
  std::vector<Element<S>> psis;
};

// rho = sum_l p_l psi_l psi_l^*; checks self-star and unit trace.
template <class S>
DensityElement<S> density_element(const TraceFunctional<S>& tr, const std::vector<S>& probs,
                                  const std::vector<Element<S>>& psis, double eps = 1e-10) {
  if (probs.size() != psis.size() || probs.empty())
    throw ValidationError("density needs matching nonempty probabilities and vectors");
  Element<S> rho = zero_element(psis[0].alg);
  for (size_t l = 0; l < psis.size(); ++l)
    rho = rho + probs[l] * multiply(psis[l], star(psis[l]));
  if (max_abs_vec(vec_sub(star(rho).v, rho.v)) > eps)
    throw ValidationError("density is not star-fixed");
  if (abs_s<S>(tr(rho) - ScalarTraits<S>::one()) > eps)
    throw ValidationError("density must have unit trace");
  return {rho, probs, psis};
}

template <class S>
DensityElement<S> density_element(const TraceFunctional<S>& tr, const Element<S>& psi,
                                  double eps = 1e-10) {
  return density_element(tr, std::vector<S>{ScalarTraits<S>::one()}, {psi}, eps);
}

// --- entropy ---------------------------------------------------------------------

inline double shannon_entropy(const std::vector<double>& probs, double eps = 1e-10) {
  double total = 0.0;
  for (double p : probs) {
    if (p < -eps) throw ValidationError("probabilities must be nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > eps) throw ValidationError("probabilities must sum to 1");
  double h = 0.0;
  for (double p : probs)
    if (p > 0.0) h -= p * std::log(p);
  return h;
}

}  // namespace naqm
