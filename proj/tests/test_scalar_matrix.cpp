#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "helpers.hpp"

using namespace naqm;

TEST_CASE("exact scalar arithmetic is exact") {
  using T = ScalarTraits<ExactComplex>;
  ExactComplex third{Rational(1, 3), Rational(0)};
  ExactComplex three{Rational(3), Rational(0)};
  REQUIRE(third * three == T::one());

  ExactComplex z{Rational(2), Rational(-5)};
  ExactComplex w{Rational(-1, 7), Rational(3, 4)};
  REQUIRE((z * w) / w == z);
  REQUIRE(z + w - w == z);
  REQUIRE(T::conj(T::i()) * T::i() == T::one());
  REQUIRE(T::is_zero(z - z, 0.0));
  REQUIRE_THROWS_AS(z / (w - w), InternalError);

  // from_double is exact on dyadics
  REQUIRE(T::from_double(0.375) == ExactComplex{Rational(3, 8), Rational(0)});
  REQUIRE(T::to_complex(T::from_ratio(-7, 2)) == Complex(-3.5, 0.0));
}

TEST_CASE("float scalar traits round trip") {
  using T = ScalarTraits<Complex>;
  REQUIRE(T::i() * T::i() == -T::one());
  REQUIRE(T::real(Complex(2.5, -1.0)) == 2.5);
  REQUIRE(T::imag(Complex(2.5, -1.0)) == -1.0);
  REQUIRE(T::abs(Complex(3.0, 4.0)) == Catch::Approx(5.0));
}

TEST_CASE("matrix arithmetic matches Eigen") {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  auto rand_mat = [&](int r, int c) {
    Mat<Complex> m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = Complex(u(rng), u(rng));
    return m;
  };
  Mat<Complex> a = rand_mat(5, 4), b = rand_mat(4, 6);
  Eigen::MatrixXcd ea = to_eigen(a), eb = to_eigen(b);
  REQUIRE(max_abs_diff(a * b, from_eigen(ea * eb)) < 1e-12);
  Mat<Complex> c = rand_mat(5, 4);
  REQUIRE(max_abs_diff(a + c, from_eigen(ea + to_eigen(c))) < 1e-12);
  REQUIRE(max_abs_diff(a - c, from_eigen(ea - to_eigen(c))) < 1e-12);
  REQUIRE(max_abs_diff(Complex(0, 2) * a, from_eigen(Complex(0, 2) * ea)) < 1e-12);
  REQUIRE(max_abs_diff(a.adjoint(), from_eigen(ea.adjoint())) < 1e-12);
  REQUIRE(max_abs_diff(a.transpose(), from_eigen(ea.transpose())) < 1e-12);
  REQUIRE(max_abs_diff(kron(a, b), from_eigen(Eigen::kroneckerProduct(ea, eb).eval())) < 1e-12);

  Vec<Complex> v;
  for (int i = 0; i < 4; ++i) v.emplace_back(u(rng), u(rng));
  Vec<Complex> av = a.apply(v);
  Eigen::VectorXcd eav = ea * to_eigen_vec(v);
  REQUIRE(max_abs_vec(vec_sub(av, from_eigen_vec(eav))) < 1e-12);

  Mat<Complex> sq = rand_mat(4, 4);
  REQUIRE(std::abs(sq.trace() - to_eigen(sq).trace()) < 1e-12);
}

TEST_CASE("row span rank, float and exact") {
  // float: three vectors, one dependent
  RowSpan<Complex> span(3);
  Vec<Complex> v1{Complex(1, 0), Complex(0, 0), Complex(2, 0)};
  Vec<Complex> v2{Complex(0, 0), Complex(1, 0), Complex(-1, 0)};
  Vec<Complex> v3 = vec_add(v1, vec_scale(Complex(3, 0), v2));
  REQUIRE(span.insert(v1));
  REQUIRE(span.insert(v2));
  REQUIRE_FALSE(span.insert(v3));
  REQUIRE(span.rank() == 2);
  REQUIRE(span.contains(v3));
  REQUIRE_FALSE(span.contains(Vec<Complex>{Complex(0, 0), Complex(0, 0), Complex(1, 0)}));

  // exact: tiny but nonzero coefficients still count
  RowSpan<ExactComplex> es(2);
  auto q = [](long n, long d) { return ExactComplex{Rational(n, d), Rational(0)}; };
  REQUIRE(es.insert({q(1, 1000000000), q(0, 1)}));
  REQUIRE_FALSE(es.insert({q(5, 1), q(0, 1)}));
  REQUIRE(es.insert({q(0, 1), q(1, 3)}));
  REQUIRE(es.rank() == 2);
}

TEST_CASE("exact null space") {
  // rows of m: [1 2 3; 2 4 6; 0 1 1] over exact scalars -> rank 2, kernel dim 1
  auto q = [](long n) { return ExactComplex{Rational(n), Rational(0)}; };
  Mat<ExactComplex> m(3, 3);
  m(0, 0) = q(1); m(0, 1) = q(2); m(0, 2) = q(3);
  m(1, 0) = q(2); m(1, 1) = q(4); m(1, 2) = q(6);
  m(2, 0) = q(0); m(2, 1) = q(1); m(2, 2) = q(1);
  auto ker = null_space_exact(m);
  REQUIRE(ker.size() == 1);
  // verify m k = 0 exactly
  for (int i = 0; i < 3; ++i) {
    ExactComplex s = ScalarTraits<ExactComplex>::zero();
    for (int j = 0; j < 3; ++j) s = s + m(i, j) * ker[0][static_cast<size_t>(j)];
    REQUIRE(ScalarTraits<ExactComplex>::is_zero(s, 0.0));
  }
  // the solution is proportional to (-1, -1, 1)
  REQUIRE_FALSE(ScalarTraits<ExactComplex>::is_zero(ker[0][2], 0.0));
}
