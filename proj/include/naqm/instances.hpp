#pragma once

// Concrete algebra instances:
//
//   * octonion_algebra()        -- the complexified octonions; alternative but
//                                  nonassociative; canonical normalized trace
//                                  picks out the e0 coefficient
//   * jordan_matrix_algebra(n)  -- n x n complex matrices under the symmetrized
//                                  product a o b = (ab + ba)/2; commutative but
//                                  nonassociative for n >= 2; trace = Tr/n
//   * pauli_jordan()            -- the 2x2 Jordan algebra in the basis
//                                  {1, sx, sy, sz}, where si o sj = delta_ij 1
//   * matrix_algebra(n)         -- ordinary associative n x n matrices, the
//                                  control case for collapse tests
//   * lie_unitization(f)        -- C 1 + g with (k,a)(l,b) = (kl, la + kb + [a,b])
//
// plus octonion combinatorics: the signed multiplication table, the signed
// permutation matrices E_i, diagonal phase matrices, and the 16x16 gamma
// matrices whose anticommutators close a rank-8 Clifford relation.

#include <array>
#include <string>
#include <vector>

#include "naqm/enveloping.hpp"
#include "naqm/trace.hpp"

namespace naqm {

template <class S>
struct Instance {
  AlgebraPtr<S> alg;
  TraceFunctional<S> trace;
};

// --- octonions ---------------------------------------------------------------

// Totally antisymmetric structure tensor of the imaginary units, eta(i,j,k),
// nonzero exactly on the permutations of the seven base triples.
struct OctonionTable {
  // +1 base triples (i < j ordering as usually tabulated)
  std::array<std::array<int, 3>, 7> base{{{1, 2, 3}, {1, 4, 5}, {1, 7, 6}, {2, 4, 6},
                                          {2, 5, 7}, {3, 4, 7}, {3, 6, 5}}};
  int eta[8][8][8] = {};
  OctonionTable() {
    for (const auto& t : base) {
      int i = t[0], j = t[1], k = t[2];
      eta[i][j][k] = eta[j][k][i] = eta[k][i][j] = 1;
      eta[i][k][j] = eta[k][j][i] = eta[j][i][k] = -1;
    }
  }
  // All ordered triples with eta = +1 (even permutations of the base) and
  // eta = -1 (odd permutations).
  std::vector<std::array<int, 3>> triples(int sign) const {
    std::vector<std::array<int, 3>> out;
    for (int i = 1; i <= 7; ++i)
      for (int j = 1; j <= 7; ++j)
        for (int k = 1; k <= 7; ++k)
          if (eta[i][j][k] == sign) out.push_back({i, j, k});
    return out;
  }
};

inline const OctonionTable& octonion_table() {
  static const OctonionTable table;
  return table;
}

template <class S>
Instance<S> octonion_algebra() {
  const auto& tab = octonion_table();
  auto A = std::make_shared<AlgebraSpec<S>>();
  A->n = 8;
  A->c.assign(8 * 8 * 8, ScalarTraits<S>::zero());
  const S one = ScalarTraits<S>::one();
  for (int mu = 0; mu < 8; ++mu) {
    A->sc(0, mu, mu) = one;
    A->sc(mu, 0, mu) = one;
  }
  for (int i = 1; i <= 7; ++i) {
    A->sc(i, i, 0) = -one;
    for (int j = 1; j <= 7; ++j)
      for (int k = 1; k <= 7; ++k)
        if (tab.eta[i][j][k] != 0)
          A->sc(i, j, k) = ScalarTraits<S>::from_ratio(tab.eta[i][j][k], 1);
  }
  A->star_m = Mat<S>(8, 8);
  A->star_m(0, 0) = one;
  for (int i = 1; i <= 7; ++i) A->star_m(i, i) = -one;
  A->unit.assign(8, ScalarTraits<S>::zero());
  A->unit[0] = one;
  A->unit_index = 0;
  A->labels = {"e0", "e1", "e2", "e3", "e4", "e5", "e6", "e7"};
  A->label = "octonion";
  A->finalize();

  TraceFunctional<S> tr{A, Vec<S>(8, ScalarTraits<S>::zero())};
  tr.t[0] = one;
  return {A, tr};
}

// Left multiplication matrix of a basis unit; for imaginary units these are
// the signed permutation matrices E_i.
template <class S>
const Mat<S>& octonion_E(const AlgebraPtr<S>& alg, int i) {
  if (alg->label != "octonion") throw ValidationError("octonion_E needs the octonion instance");
  if (i < 0 || i > 7) throw ValidationError("octonion unit index out of range");
  return alg->lmul[i];
}

template <class S>
bool signed_permutation_check(const Mat<S>& m, double eps = 1e-10) {
  if (m.rows != m.cols) return false;
  std::vector<int> col_hits(static_cast<size_t>(m.cols), 0);
  for (int i = 0; i < m.rows; ++i) {
    int hits = 0;
    for (int j = 0; j < m.cols; ++j) {
      double a = abs_s(m(i, j));
      if (a <= eps) continue;
      // entry must be +-1 up to eps, and real
      if (std::abs(a - 1.0) > eps) return false;
      if (ScalarTraits<S>::real_to_double(ScalarTraits<S>::imag(m(i, j))) != 0.0 &&
          std::abs(ScalarTraits<S>::real_to_double(ScalarTraits<S>::imag(m(i, j)))) > eps)
        return false;
      ++hits;
      ++col_hits[static_cast<size_t>(j)];
    }
    if (hits != 1) return false;
  }
  for (int c : col_hits)
    if (c != 1) return false;
  return true;
}

template <class S>
struct PhaseMatrix {
  int i = 0, j = 0, k = 0;
  Mat<S> m;
};

// Diagonal phase matrix E_i E_j E_k for a multiplication triple (i,j,k):
// -1 on slots {0,i,j,k}, +1 elsewhere.
template <class S>
PhaseMatrix<S> phase_matrix(const AlgebraPtr<S>& alg, int i, int j, int k) {
  const auto& tab = octonion_table();
  if (i < 1 || i > 7 || j < 1 || j > 7 || k < 1 || k > 7 || tab.eta[i][j][k] == 0)
    throw ValidationError("phase_matrix needs a triple from the multiplication table");
  Mat<S> p = octonion_E(alg, i) * octonion_E(alg, j) * octonion_E(alg, k);
  // sanity: diagonal with the advertised sign pattern
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) {
      if (r == c) continue;
      if (!is_zero_s(p(r, c), 1e-12)) throw InternalError("phase matrix is not diagonal");
    }
  return {i, j, k, std::move(p)};
}

// Conjugated unit matrices: Ebar_0 = E_0, Ebar_i = -E_i.
template <class S>
Mat<S> octonion_E_bar(const AlgebraPtr<S>& alg, int mu) {
  Mat<S> e = octonion_E(alg, mu);
  if (mu == 0) return e;
  return -ScalarTraits<S>::one() * e;
}

// 16x16 generators Gamma_mu = [[0, E_mu], [Ebar_mu, 0]]; their anticommutators
// satisfy {Gamma_mu, Gamma_nu} = 2 delta_mu_nu.
template <class S>
std::vector<Mat<S>> clifford_gamma(const AlgebraPtr<S>& alg) {
  std::vector<Mat<S>> gams;
  for (int mu = 0; mu < 8; ++mu) {
    Mat<S> g(16, 16);
    const Mat<S>& e = octonion_E(alg, mu);
    Mat<S> eb = octonion_E_bar(alg, mu);
    for (int r = 0; r < 8; ++r)
      for (int c = 0; c < 8; ++c) {
        g(r, 8 + c) = e(r, c);
        g(8 + r, c) = eb(r, c);
      }
    gams.push_back(std::move(g));
  }
  return gams;
}

// --- matrix algebras (ordinary and Jordan) -----------------------------------

namespace detail {

template <class S>
void matrix_basis_common(AlgebraSpec<S>& A, int m) {
  const S one = ScalarTraits<S>::one();
  A.star_m = Mat<S>(A.n, A.n);
  A.labels.resize(static_cast<size_t>(A.n));
  A.basis_matrices.assign(static_cast<size_t>(A.n), Mat<S>(m, m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int mu = i * m + j;
      A.star_m(mu, j * m + i) = one;  // (e_ij)^* = e_ji
      A.labels[static_cast<size_t>(mu)] =
          "e" + std::to_string(i + 1) + std::to_string(j + 1);
      A.basis_matrices[static_cast<size_t>(mu)](i, j) = one;
    }
  A.unit.assign(static_cast<size_t>(A.n), ScalarTraits<S>::zero());
  for (int i = 0; i < m; ++i) A.unit[static_cast<size_t>(i * m + i)] = one;
  A.matrix_dim = m;
}

}  // namespace detail

// Symmetrized (Jordan) product on n x n matrices in the matrix-unit basis:
//   e_ij o e_kl = (delta_jk e_il + delta_li e_kj) / 2
template <class S>
Instance<S> jordan_matrix_algebra(int m) {
  if (m < 1) throw ValidationError("matrix dimension must be positive");
  auto A = std::make_shared<AlgebraSpec<S>>();
  A->n = m * m;
  A->c.assign(static_cast<size_t>(A->n) * A->n * A->n, ScalarTraits<S>::zero());
  const S half = ScalarTraits<S>::from_ratio(1, 2);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          int mu = i * m + j, nu = k * m + l;
          if (j == k) A->sc(mu, nu, i * m + l) += half;
          if (l == i) A->sc(mu, nu, k * m + j) += half;
        }
  detail::matrix_basis_common(*A, m);
  A->product = ProductKind::matrix_jordan;
  A->label = "jordan" + std::to_string(m);
  A->finalize();

  TraceFunctional<S> tr{A, Vec<S>(static_cast<size_t>(A->n), ScalarTraits<S>::zero())};
  for (int i = 0; i < m; ++i) tr.t[static_cast<size_t>(i * m + i)] = ScalarTraits<S>::from_ratio(1, m);
  return {A, tr};
}

// Ordinary associative matrix product, same basis conventions; the control
// instance for the collapse theorems.
template <class S>
Instance<S> matrix_algebra(int m) {
  if (m < 1) throw ValidationError("matrix dimension must be positive");
  auto A = std::make_shared<AlgebraSpec<S>>();
  A->n = m * m;
  A->c.assign(static_cast<size_t>(A->n) * A->n * A->n, ScalarTraits<S>::zero());
  const S one = ScalarTraits<S>::one();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int l = 0; l < m; ++l)
        A->sc(i * m + j, j * m + l, i * m + l) += one;  // e_ij e_jl = e_il
  detail::matrix_basis_common(*A, m);
  A->product = ProductKind::matrix_ordinary;
  A->label = "matrix" + std::to_string(m);
  A->finalize();

  TraceFunctional<S> tr{A, Vec<S>(static_cast<size_t>(A->n), ScalarTraits<S>::zero())};
  for (int i = 0; i < m; ++i) tr.t[static_cast<size_t>(i * m + i)] = ScalarTraits<S>::from_ratio(1, m);
  return {A, tr};
}

// 2x2 Jordan algebra in the hermitian basis {1, sx, sy, sz}:
// si o sj = delta_ij 1, everything real in the structure constants.
template <class S>
Instance<S> pauli_jordan() {
  auto A = std::make_shared<AlgebraSpec<S>>();
  A->n = 4;
  A->c.assign(64, ScalarTraits<S>::zero());
  const S one = ScalarTraits<S>::one();
  for (int mu = 0; mu < 4; ++mu) {
    A->sc(0, mu, mu) = one;
    A->sc(mu, 0, mu) = one;
  }
  A->sc(0, 0, 0) = one;  // rewritten by the two loops above; keep it at 1
  for (int i = 1; i <= 3; ++i) A->sc(i, i, 0) = one;
  A->star_m = Mat<S>::identity(4);  // hermitian basis: star is plain conjugation
  A->unit.assign(4, ScalarTraits<S>::zero());
  A->unit[0] = one;
  A->unit_index = 0;
  A->labels = {"1", "x", "y", "z"};
  A->label = "pauli_jordan";
  A->product = ProductKind::matrix_jordan;
  A->matrix_dim = 2;
  A->basis_matrices.assign(4, Mat<S>(2, 2));
  const S im = ScalarTraits<S>::i();
  A->basis_matrices[0](0, 0) = one;  A->basis_matrices[0](1, 1) = one;
  A->basis_matrices[1](0, 1) = one;  A->basis_matrices[1](1, 0) = one;
  A->basis_matrices[2](0, 1) = -im;  A->basis_matrices[2](1, 0) = im;
  A->basis_matrices[3](0, 0) = one;  A->basis_matrices[3](1, 1) = -one;
  A->finalize();

  TraceFunctional<S> tr{A, Vec<S>(4, ScalarTraits<S>::zero())};
  tr.t[0] = one;
  return {A, tr};
}

// --- Lie unitization ----------------------------------------------------------

// C 1 (+) g with product (k,a)(l,b) = (kl, la + kb + [a,b]).  The structure
// constants f must be real, antisymmetric, and satisfy Jacobi; the star fixes
// the unit and negates the Lie generators (coefficientwise conjugation on top),
// which is the unique choice making star antimultiplicative here.
template <class S>
Instance<S> lie_unitization(int g_dim, const std::vector<std::vector<std::vector<S>>>& f,
                            const std::string& name = "lie_unitization") {
  if (g_dim < 1) throw ValidationError("Lie algebra dimension must be positive");
  auto chk = [&](bool ok, const char* msg) {
    if (!ok) throw ValidationError(msg);
  };
  chk(f.size() == static_cast<size_t>(g_dim), "structure constants: wrong outer size");
  for (const auto& fi : f) {
    chk(fi.size() == static_cast<size_t>(g_dim), "structure constants: wrong middle size");
    for (const auto& fij : fi)
      chk(fij.size() == static_cast<size_t>(g_dim), "structure constants: wrong inner size");
  }
  for (int i = 0; i < g_dim; ++i)
    for (int j = 0; j < g_dim; ++j)
      for (int k = 0; k < g_dim; ++k) {
        chk(is_zero_s<S>(f[i][j][k] + f[j][i][k], 1e-12), "structure constants not antisymmetric");
        chk(ScalarTraits<S>::real_to_double(ScalarTraits<S>::imag(f[i][j][k])) == 0.0 ||
                std::abs(ScalarTraits<S>::real_to_double(ScalarTraits<S>::imag(f[i][j][k]))) <= 1e-12,
            "structure constants must be real");
      }
  for (int i = 0; i < g_dim; ++i)
    for (int j = 0; j < g_dim; ++j)
      for (int k = 0; k < g_dim; ++k)
        for (int l = 0; l < g_dim; ++l) {
          S s = ScalarTraits<S>::zero();
          for (int mth = 0; mth < g_dim; ++mth)
            s += f[i][j][mth] * f[mth][k][l] + f[j][k][mth] * f[mth][i][l] +
                 f[k][i][mth] * f[mth][j][l];
          chk(is_zero_s(s, 1e-10), "structure constants violate the Jacobi identity");
        }

  auto A = std::make_shared<AlgebraSpec<S>>();
  A->n = g_dim + 1;
  A->c.assign(static_cast<size_t>(A->n) * A->n * A->n, ScalarTraits<S>::zero());
  const S one = ScalarTraits<S>::one();
  for (int mu = 0; mu < A->n; ++mu) {
    A->sc(0, mu, mu) = one;
    A->sc(mu, 0, mu) = one;
  }
  A->sc(0, 0, 0) = one;
  for (int i = 1; i <= g_dim; ++i)
    for (int j = 1; j <= g_dim; ++j)
      for (int k = 1; k <= g_dim; ++k)
        A->sc(i, j, k) = f[i - 1][j - 1][k - 1];
  A->star_m = Mat<S>(A->n, A->n);
  A->star_m(0, 0) = one;
  for (int i = 1; i <= g_dim; ++i) A->star_m(i, i) = -one;
  A->unit.assign(static_cast<size_t>(A->n), ScalarTraits<S>::zero());
  A->unit[0] = one;
  A->unit_index = 0;
  A->labels.resize(static_cast<size_t>(A->n));
  A->labels[0] = "1";
  for (int i = 1; i <= g_dim; ++i) A->labels[static_cast<size_t>(i)] = "T" + std::to_string(i);
  A->label = name;
  A->finalize();

  // Canonical degenerate trace: the unit-coefficient functional.  Products
  // never feed the Lie part back into the unit slot, so it is cyclic and
  // normalized, and its Gram form is diag(1, 0, ..., 0) -- PSD with a large
  // null ideal (the whole Lie part), which is exactly what makes it a good
  // quotient-construction example.
  TraceFunctional<S> tr{A, Vec<S>(static_cast<size_t>(A->n), ScalarTraits<S>::zero())};
  tr.t[0] = one;
  return {A, tr};
}

template <class S>
Instance<S> su2_unitization() {
  const S one = ScalarTraits<S>::one();
  std::vector f(3, std::vector(3, std::vector<S>(3, ScalarTraits<S>::zero())));
  auto set = [&](int i, int j, int k, const S& v) { f[i][j][k] = v; };
  set(0, 1, 2, one);  set(1, 2, 0, one);  set(2, 0, 1, one);
  set(1, 0, 2, -one); set(2, 1, 0, -one); set(0, 2, 1, -one);
  return lie_unitization<S>(3, f, "su2_unitization");
}

// --- distinguished Hamiltonian construction -----------------------------------

// scale * lhat( z(yy) - (zy)y ).  On a Jordan matrix instance the argument of
// lhat equals the quarter double commutator [[Z,Y],Y]/4 of the underlying
// matrices (verified here); on an ordinary associative matrix instance it is
// zero.  Other instances are rejected: the cross-check needs honest matrices.
template <class S>
MultOp<S> bonafide_hamiltonian(const Element<S>& y, const Element<S>& z, const S& scale,
                               double eps = 1e-10) {
  Element<S>::check_same(y, z);
  const auto& A = *y.alg;
  if (A.product == ProductKind::generic)
    throw UnsupportedOperation("bonafide_hamiltonian needs a matrix-backed instance");
  Element<S> d = multiply(z, multiply(y, y)) - multiply(multiply(z, y), y);
  if (A.product == ProductKind::matrix_jordan) {
    Mat<S> Y = underlying_matrix(y), Z = underlying_matrix(z);
    Mat<S> zy = Z * Y - Y * Z;
    Mat<S> ddag = zy * Y - Y * zy;  // [[Z,Y],Y]
    Mat<S> dmat = underlying_matrix(d);
    double resid = max_abs_diff(ScalarTraits<S>::from_ratio(1, 4) * ddag, dmat);
    if (resid > eps)
      throw InternalError("Jordan associator failed the quarter-double-commutator identity");
  }
  return scale_op(scale, left_op(d));
}

}  // namespace naqm
