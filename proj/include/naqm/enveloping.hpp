#pragma once

// Multiplication operators on a (possibly nonassociative) algebra A and the
// associative operator algebra they generate.  A multiplication operator acts
// on coefficient vectors; left and right multiplications by algebra elements
// are the generators:
//
//     lhat(a) : x -> a x          rhat(a) : x -> x a
//
// Composition of such operators is ordinary (associative) matrix composition.
// Operators optionally carry word provenance -- a weighted sum of generator
// strings -- which is what makes the two antihomomorphisms computable:
//
//     prime:  reverse each string, swap lhat <-> rhat      (linear)
//     star :  reverse each string, star each generator,    (antilinear)
//             conjugate the weights
//
// Both re-evaluate their result matrix from the transformed word.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "naqm/algebra.hpp"

namespace naqm {

enum class Gen : std::uint8_t { L, R };

struct WordFactor {
  Gen gen;
  int index;  // basis index of the generator
  friend bool operator==(const WordFactor& a, const WordFactor& b) {
    return a.gen == b.gen && a.index == b.index;
  }
};

template <class S>
struct WordTerm {
  S weight;
  std::vector<WordFactor> factors;  // leftmost factor acts last (outermost)
};

template <class S>
using Word = std::vector<WordTerm<S>>;

template <class S>
struct MultOp {
  AlgebraPtr<S> alg;
  Mat<S> m;                      // action on coefficient vectors
  std::optional<Word<S>> word;   // provenance, when built from generators

  int dim() const { return alg ? alg->n : 0; }
};

// --- word evaluation --------------------------------------------------------

template <class S>
Mat<S> evaluate_word(const AlgebraPtr<S>& alg, const Word<S>& w) {
  const int n = alg->n;
  Mat<S> total(n, n);
  for (const auto& term : w) {
    Mat<S> acc = Mat<S>::identity(n);
    // Factors compose left-to-right as operators: [f0, f1, ...] means f0 ∘ f1 ∘ ...
    for (auto it = term.factors.rbegin(); it != term.factors.rend(); ++it) {
      const Mat<S>& g = (it->gen == Gen::L) ? alg->lmul[it->index] : alg->rmul[it->index];
      acc = g * acc;
    }
    total = total + term.weight * acc;
  }
  return total;
}

// --- constructors ------------------------------------------------------------

template <class S>
MultOp<S> identity_op(const AlgebraPtr<S>& alg) {
  Word<S> w{{ScalarTraits<S>::one(), {}}};
  return {alg, Mat<S>::identity(alg->n), std::move(w)};
}

template <class S>
MultOp<S> left_op(const Element<S>& a) {
  const auto& A = *a.alg;
  Mat<S> m(A.n, A.n);
  Word<S> w;
  for (int mu = 0; mu < A.n; ++mu) {
    if (is_zero_s(a.v[mu], 0.0)) continue;
    m = m + a.v[mu] * A.lmul[mu];
    w.push_back({a.v[mu], {{Gen::L, mu}}});
  }
  return {a.alg, std::move(m), std::move(w)};
}

template <class S>
MultOp<S> right_op(const Element<S>& a) {
  const auto& A = *a.alg;
  Mat<S> m(A.n, A.n);
  Word<S> w;
  for (int mu = 0; mu < A.n; ++mu) {
    if (is_zero_s(a.v[mu], 0.0)) continue;
    m = m + a.v[mu] * A.rmul[mu];
    w.push_back({a.v[mu], {{Gen::R, mu}}});
  }
  return {a.alg, std::move(m), std::move(w)};
}

// --- algebra of operators ----------------------------------------------------

template <class S>
void check_same_alg(const MultOp<S>& x, const MultOp<S>& y) {
  if (x.alg.get() != y.alg.get())
    throw ValidationError("operators act on different algebras");
}

template <class S>
MultOp<S> compose(const MultOp<S>& x, const MultOp<S>& y) {
  check_same_alg(x, y);
  MultOp<S> r{x.alg, x.m * y.m, std::nullopt};
  if (x.word && y.word) {
    Word<S> w;
    w.reserve(x.word->size() * y.word->size());
    for (const auto& tx : *x.word)
      for (const auto& ty : *y.word) {
        WordTerm<S> t{tx.weight * ty.weight, tx.factors};
        t.factors.insert(t.factors.end(), ty.factors.begin(), ty.factors.end());
        w.push_back(std::move(t));
      }
    r.word = std::move(w);
  }
  return r;
}

template <class S>
MultOp<S> add_op(const MultOp<S>& x, const MultOp<S>& y) {
  check_same_alg(x, y);
  MultOp<S> r{x.alg, x.m + y.m, std::nullopt};
  if (x.word && y.word) {
    Word<S> w = *x.word;
    w.insert(w.end(), y.word->begin(), y.word->end());
    r.word = std::move(w);
  }
  return r;
}

template <class S>
MultOp<S> sub_op(const MultOp<S>& x, const MultOp<S>& y) {
  MultOp<S> neg = y;
  neg.m = -ScalarTraits<S>::one() * neg.m;
  if (neg.word)
    for (auto& t : *neg.word) t.weight = -t.weight;
  return add_op(x, neg);
}

template <class S>
MultOp<S> scale_op(const S& s, const MultOp<S>& x) {
  MultOp<S> r = x;
  r.m = s * r.m;
  if (r.word)
    for (auto& t : *r.word) t.weight = s * t.weight;
  return r;
}

template <class S>
MultOp<S> commutator_op(const MultOp<S>& x, const MultOp<S>& y) {
  return sub_op(compose(x, y), compose(y, x));
}

template <class S>
MultOp<S> anticommutator_op(const MultOp<S>& x, const MultOp<S>& y) {
  return add_op(compose(x, y), compose(y, x));
}

template <class S>
Element<S> act(const MultOp<S>& x, const Element<S>& a) {
  if (x.alg.get() != a.alg.get())
    throw ValidationError("operator and element live on different algebras");
  return {a.alg, x.m.apply(a.v)};
}

// --- the two antihomomorphisms ----------------------------------------------

template <class S>
MultOp<S> prime_op(const MultOp<S>& x) {
  if (!x.word)
    throw UnsupportedOperation("prime needs word provenance; operator has none");
  Word<S> w;
  w.reserve(x.word->size());
  for (const auto& t : *x.word) {
    WordTerm<S> nt{t.weight, {}};
    nt.factors.reserve(t.factors.size());
    for (auto it = t.factors.rbegin(); it != t.factors.rend(); ++it)
      nt.factors.push_back({it->gen == Gen::L ? Gen::R : Gen::L, it->index});
    w.push_back(std::move(nt));
  }
  return {x.alg, evaluate_word(x.alg, w), std::move(w)};
}

// Star of a single generator: lhat(e_mu)^* = lhat(e_mu^*) and likewise for
// rhat, so one factor expands into the star-matrix row of its index.
template <class S>
MultOp<S> star_op(const MultOp<S>& x) {
  if (!x.word)
    throw UnsupportedOperation("star needs word provenance; operator has none");
  const auto& A = *x.alg;
  Word<S> w;
  for (const auto& t : *x.word) {
    // Running list of partially starred terms, built factor by factor.
    std::vector<WordTerm<S>> acc{{conj_s(t.weight), {}}};
    for (auto it = t.factors.rbegin(); it != t.factors.rend(); ++it) {
      std::vector<WordTerm<S>> next;
      for (int nu = 0; nu < A.n; ++nu) {
        const S& s_entry = A.star_m(it->index, nu);
        if (is_zero_s(s_entry, 0.0)) continue;
        for (const auto& partial : acc) {
          WordTerm<S> nt{partial.weight * s_entry, partial.factors};
          nt.factors.push_back({it->gen, nu});
          next.push_back(std::move(nt));
        }
      }
      acc = std::move(next);
    }
    for (auto& nt : acc) w.push_back(std::move(nt));
  }
  return {x.alg, evaluate_word(x.alg, w), std::move(w)};
}

// Adjoint with respect to a sesquilinear form given by a Gram matrix G:
// X -> G^{-1} X^dagger G.  On a faithful tracial representation this agrees
// with star_op, but it needs no provenance, so numerically produced operators
// (exponentials, conjugations) can still be adjointed/checked.  Only available
// in float mode: it solves against G.
inline MultOp<Complex> trace_adjoint(const MultOp<Complex>& x, const Mat<Complex>& gram) {
  Eigen::MatrixXcd G = to_eigen(gram);
  Eigen::MatrixXcd Xd = to_eigen(x.m).adjoint();
  Eigen::MatrixXcd r = G.partialPivLu().solve(Xd * G);
  return {x.alg, from_eigen(r), std::nullopt};
}

// --- generated operator subalgebras -----------------------------------------

template <class S>
struct GeneratedSubalgebra {
  AlgebraPtr<S> alg;
  std::vector<MultOp<S>> basis;
  bool closed = false;
  int dim() const { return static_cast<int>(basis.size()); }
};

namespace detail {
template <class S>
Vec<S> flatten(const Mat<S>& m) {
  return m.a;
}
}  // namespace detail

// Breadth-first span closure of the operator algebra generated by `gens`
// under composition.  Candidates are visited by word length, left products
// before right products, generators in input order -- a fixed, deterministic
// policy.  The resulting span does not depend on the visit order (asserted by
// tests that shuffle the generators).
template <class S>
GeneratedSubalgebra<S> span_closure(const AlgebraPtr<S>& alg,
                                    const std::vector<MultOp<S>>& gens,
                                    bool include_unit = true,
                                    double pivot_rel = 1e-8,
                                    int max_dim = -1) {
  const int n = alg->n;
  if (max_dim < 0) max_dim = n * n;
  GeneratedSubalgebra<S> out;
  out.alg = alg;
  RowSpan<S> span(n * n, pivot_rel);

  auto try_insert = [&](const MultOp<S>& op) {
    if (span.rank() >= max_dim) return false;
    if (span.insert(detail::flatten(op.m))) {
      out.basis.push_back(op);
      return true;
    }
    return false;
  };

  if (include_unit) try_insert(identity_op(alg));
  std::vector<MultOp<S>> level;
  for (const auto& g : gens) {
    if (g.alg.get() != alg.get())
      throw ValidationError("generator acts on a different algebra");
    if (try_insert(g)) level.push_back(g);
  }

  while (!level.empty() && span.rank() < max_dim) {
    std::vector<MultOp<S>> next;
    for (const auto& g : gens) {
      for (const auto& b : level) {
        MultOp<S> cand = compose(g, b);  // left products first
        if (try_insert(cand)) next.push_back(std::move(cand));
      }
    }
    for (const auto& g : gens) {
      for (const auto& b : level) {
        MultOp<S> cand = compose(b, g);
        if (try_insert(cand)) next.push_back(std::move(cand));
      }
    }
    level = std::move(next);
  }

  // Closure flag: a span of full ambient dimension contains every operator,
  // so the pairwise product check only runs on proper subspaces.
  out.closed = true;
  if (span.rank() < n * n) {
    for (const auto& x : out.basis) {
      for (const auto& y : out.basis) {
        if (!span.contains(detail::flatten((x.m * y.m)))) {
          out.closed = false;
          break;
        }
      }
      if (!out.closed) break;
    }
  }
  return out;
}

// Default generating set for the full multiplication algebra: all left and
// right basis multiplications plus the identity.
template <class S>
GeneratedSubalgebra<S> multiplication_algebra(const AlgebraPtr<S>& alg,
                                              double pivot_rel = 1e-8) {
  std::vector<MultOp<S>> gens;
  gens.reserve(2 * alg->n);
  for (int mu = 0; mu < alg->n; ++mu) gens.push_back(left_op(basis_element(alg, mu)));
  for (int mu = 0; mu < alg->n; ++mu) gens.push_back(right_op(basis_element(alg, mu)));
  return span_closure(alg, gens, /*include_unit=*/true, pivot_rel);
}

// Coordinates of an operator in the (flattened) span of a closed basis.
// Float mode: least squares against the basis with a residual gate.
inline Vec<Complex> coordinates_in_basis(const GeneratedSubalgebra<Complex>& sub,
                                         const MultOp<Complex>& x, double eps = 1e-8) {
  const int n2 = sub.alg->n * sub.alg->n;
  Eigen::MatrixXcd F(n2, sub.dim());
  for (int j = 0; j < sub.dim(); ++j)
    F.col(j) = to_eigen_vec(detail::flatten(sub.basis[static_cast<size_t>(j)].m));
  Eigen::VectorXcd b = to_eigen_vec(detail::flatten(x.m));
  Eigen::VectorXcd c = F.colPivHouseholderQr().solve(b);
  double resid = (F * c - b).cwiseAbs().maxCoeff();
  double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  if (resid > eps * scale)
    throw ValidationError("operator does not lie in the span of the given basis");
  return from_eigen_vec(c);
}

}  // namespace naqm
