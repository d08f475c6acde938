#pragma once

// Small dense matrix/vector layer over an arbitrary scalar S.  This is the
// arithmetic the algebraic core runs on (products, stars, span closures,
// kernels) -- it has to work for exact rational scalars, which rules out
// handing everything to a floating-point linear algebra library.  Numeric
// analysis (eigensolves, SVD, matrix exponentials) converts to Eigen via
// to_eigen()/from_eigen() and only exists on the Complex instantiation.

#include <algorithm>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "naqm/scalar.hpp"

namespace naqm {

template <class S>
using Vec = std::vector<S>;

template <class S>
struct Mat {
  int rows = 0, cols = 0;
  std::vector<S> a;  // row-major

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, ScalarTraits<S>::zero()) {}

  S& operator()(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const S& operator()(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = ScalarTraits<S>::one();
    return m;
  }

  friend Mat operator+(const Mat& x, const Mat& y) {
    Mat r(x.rows, x.cols);
    for (size_t k = 0; k < r.a.size(); ++k) r.a[k] = x.a[k] + y.a[k];
    return r;
  }
  friend Mat operator-(const Mat& x, const Mat& y) {
    Mat r(x.rows, x.cols);
    for (size_t k = 0; k < r.a.size(); ++k) r.a[k] = x.a[k] - y.a[k];
    return r;
  }
  friend Mat operator*(const S& s, const Mat& x) {
    Mat r(x.rows, x.cols);
    for (size_t k = 0; k < r.a.size(); ++k) r.a[k] = s * x.a[k];
    return r;
  }
  friend Mat operator*(const Mat& x, const Mat& y) {
    Mat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
      for (int k = 0; k < x.cols; ++k) {
        const S& xik = x(i, k);
        if (is_zero_s(xik, 0.0)) continue;  // skip exact zeros, common in sparse tables
        for (int j = 0; j < y.cols; ++j) r(i, j) += xik * y(k, j);
      }
    return r;
  }

  Vec<S> apply(const Vec<S>& v) const {
    Vec<S> r(rows, ScalarTraits<S>::zero());
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  Mat transpose() const {
    Mat r(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r(j, i) = (*this)(i, j);
    return r;
  }
  Mat adjoint() const {
    Mat r(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r(j, i) = conj_s((*this)(i, j));
    return r;
  }
  Mat conjugate() const {
    Mat r(rows, cols);
    for (size_t k = 0; k < a.size(); ++k) r.a[k] = conj_s(a[k]);
    return r;
  }

  double max_abs() const {
    double m = 0.0;
    for (const S& s : a) m = std::max(m, abs_s(s));
    return m;
  }
  S trace() const {
    S t = ScalarTraits<S>::zero();
    for (int i = 0; i < std::min(rows, cols); ++i) t += (*this)(i, i);
    return t;
  }
};

template <class S>
double max_abs_diff(const Mat<S>& x, const Mat<S>& y) {
  return (x - y).max_abs();
}

template <class S>
double max_abs_vec(const Vec<S>& v) {
  double m = 0.0;
  for (const S& s : v) m = std::max(m, abs_s(s));
  return m;
}

template <class S>
Vec<S> vec_add(const Vec<S>& x, const Vec<S>& y) {
  Vec<S> r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
  return r;
}

template <class S>
Vec<S> vec_sub(const Vec<S>& x, const Vec<S>& y) {
  Vec<S> r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
  return r;
}

template <class S>
Vec<S> vec_scale(const S& s, const Vec<S>& x) {
  Vec<S> r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = s * x[i];
  return r;
}

// Plain bilinear dot product (no conjugation); covector applications.
template <class S>
S dot(const Vec<S>& x, const Vec<S>& y) {
  S r = ScalarTraits<S>::zero();
  for (size_t i = 0; i < x.size(); ++i) r += x[i] * y[i];
  return r;
}

// Sesquilinear pairing, conjugate-linear in the first slot.
template <class S>
S inner(const Vec<S>& x, const Vec<S>& y) {
  S r = ScalarTraits<S>::zero();
  for (size_t i = 0; i < x.size(); ++i) r += conj_s(x[i]) * y[i];
  return r;
}

template <class S>
Mat<S> kron(const Mat<S>& x, const Mat<S>& y) {
  Mat<S> r(x.rows * y.rows, x.cols * y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j)
      for (int k = 0; k < y.rows; ++k)
        for (int l = 0; l < y.cols; ++l)
          r(i * y.rows + k, j * y.cols + l) = x(i, j) * y(k, l);
  return r;
}

// ---------------------------------------------------------------------------
// Incremental row reduction.  Keeps a reduced row basis of the span of the
// vectors inserted so far.  Float mode declares a pivot dead when it falls
// below pivot_rel * (largest entry of the incoming vector); exact mode only
// trusts literal zero.
// ---------------------------------------------------------------------------

template <class S>
class RowSpan {
 public:
  explicit RowSpan(int ambient_dim, double pivot_rel = 1e-8)
      : dim_(ambient_dim), pivot_rel_(pivot_rel) {}

  int ambient_dim() const { return dim_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<Vec<S>>& rows() const { return rows_; }

  // Reduce v against the current basis in place; returns the pivot column or
  // -1 when v reduces to (numerical) zero.
  int reduce(Vec<S>& v) const {
    double scale = 1e-300;  // exact mode never consults the scale
    if constexpr (!ScalarTraits<S>::exact) scale = std::max(max_abs_vec(v), scale);
    for (size_t r = 0; r < rows_.size(); ++r) {
      const S f = v[static_cast<size_t>(lead_[r])];  // basis rows have unit pivot
      if (!is_zero_s(f, 0.0)) {
        const Vec<S>& row = rows_[r];
        for (int c = 0; c < dim_; ++c) {
          if (is_zero_s(row[c], 0.0)) continue;  // reduced rows are mostly zero
          v[c] -= f * row[c];
        }
        v[static_cast<size_t>(lead_[r])] = ScalarTraits<S>::zero();  // kill rounding residue
      }
    }
    if constexpr (ScalarTraits<S>::exact) {
      for (int c = 0; c < dim_; ++c)
        if (!is_zero_s(v[c], 0.0)) return c;
      return -1;
    } else {
      // Partial pivoting: take the largest surviving entry, subject to the
      // relative threshold against the incoming vector's own scale.
      int best = -1;
      double best_abs = pivot_rel_ * scale;
      for (int c = 0; c < dim_; ++c) {
        double a = abs_s(v[c]);
        if (a > best_abs) { best = c; best_abs = a; }
      }
      return best;
    }
  }

  bool contains(Vec<S> v) const { return reduce(v) < 0; }

  // Returns true (and absorbs v) when v enlarges the span.
  bool insert(Vec<S> v) {
    int piv = reduce(v);
    if (piv < 0) return false;
    S inv = ScalarTraits<S>::one() / v[static_cast<size_t>(piv)];
    for (int c = 0; c < dim_; ++c) {
      if (is_zero_s(v[c], 0.0)) continue;
      v[c] = inv * v[c];
    }
    v[static_cast<size_t>(piv)] = ScalarTraits<S>::one();
    // Back-substitute into existing rows so the basis stays fully reduced.
    for (size_t r = 0; r < rows_.size(); ++r) {
      S f = rows_[r][static_cast<size_t>(piv)];
      if (is_zero_s(f, 0.0)) continue;
      for (int c = 0; c < dim_; ++c) {
        if (is_zero_s(v[c], 0.0)) continue;
        rows_[r][c] -= f * v[c];
      }
      rows_[r][static_cast<size_t>(piv)] = ScalarTraits<S>::zero();
    }
    rows_.push_back(std::move(v));
    lead_.push_back(piv);
    return true;
  }

 private:
  int dim_;
  double pivot_rel_;
  std::vector<Vec<S>> rows_;
  std::vector<int> lead_;
};

// Exact nullspace of a (not necessarily square) matrix: basis of {x : Mx = 0}.
// Gauss-Jordan over the exact scalar; only instantiated in exact mode.
template <class S>
std::vector<Vec<S>> null_space_exact(const Mat<S>& m) {
  static_assert(ScalarTraits<S>::exact);
  Mat<S> w = m;
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < w.cols && r < w.rows; ++c) {
    int pr = -1;
    for (int i = r; i < w.rows; ++i)
      if (!is_zero_s(w(i, c), 0.0)) { pr = i; break; }
    if (pr < 0) continue;
    for (int j = 0; j < w.cols; ++j) std::swap(w(pr, j), w(r, j));
    S inv = ScalarTraits<S>::one() / w(r, c);
    for (int j = 0; j < w.cols; ++j) w(r, j) = inv * w(r, j);
    for (int i = 0; i < w.rows; ++i) {
      if (i == r) continue;
      S f = w(i, c);
      if (is_zero_s(f, 0.0)) continue;
      for (int j = 0; j < w.cols; ++j) w(i, j) -= f * w(r, j);
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(w.cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<Vec<S>> basis;
  for (int c = 0; c < w.cols; ++c) {
    if (is_pivot[c]) continue;
    Vec<S> x(w.cols, ScalarTraits<S>::zero());
    x[c] = ScalarTraits<S>::one();
    for (int i = 0; i < r; ++i) x[pivot_col[i]] = -w(i, c);
    basis.push_back(std::move(x));
  }
  return basis;
}

// ---------------------------------------------------------------------------
// Eigen bridges (Complex instantiation only).
// ---------------------------------------------------------------------------

inline Eigen::MatrixXcd to_eigen(const Mat<Complex>& m) {
  Eigen::MatrixXcd e(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) e(i, j) = m(i, j);
  return e;
}

inline Mat<Complex> from_eigen(const Eigen::MatrixXcd& e) {
  Mat<Complex> m(static_cast<int>(e.rows()), static_cast<int>(e.cols()));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) m(i, j) = e(i, j);
  return m;
}

inline Eigen::VectorXcd to_eigen_vec(const Vec<Complex>& v) {
  Eigen::VectorXcd e(static_cast<long>(v.size()));
  for (size_t i = 0; i < v.size(); ++i) e(static_cast<long>(i)) = v[i];
  return e;
}

inline Vec<Complex> from_eigen_vec(const Eigen::VectorXcd& e) {
  Vec<Complex> v(static_cast<size_t>(e.size()));
  for (size_t i = 0; i < v.size(); ++i) v[i] = e(static_cast<long>(i));
  return v;
}

}  // namespace naqm
