#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "helpers.hpp"

using namespace naqm;
using testutil::random_element;
using testutil::random_element_exact;

TEST_CASE("word evaluation: leftmost factor acts last") {
  auto inst = octonion_algebra<Complex>();
  Word<Complex> w;
  w.push_back({Complex(1, 0), {{Gen::L, 1}, {Gen::R, 2}}});
  MultOp<Complex> op{inst.alg, evaluate_word(inst.alg, w), w};
  std::mt19937_64 rng(37);
  Element<Complex> x = random_element(inst.alg, rng);
  Element<Complex> want =
      multiply(basis_element(inst.alg, 1), multiply(x, basis_element(inst.alg, 2)));
  REQUIRE(max_abs_vec(vec_sub(act(op, x).v, want.v)) < 1e-14);
}

TEST_CASE("composition is matrix composition, action is application") {
  auto inst = octonion_algebra<Complex>();
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 15; ++trial) {
    Element<Complex> a = random_element(inst.alg, rng), b = random_element(inst.alg, rng),
                     x = random_element(inst.alg, rng);
    MultOp<Complex> la = left_op(a), rb = right_op(b);
    // (la o rb) x = a (x b)
    Element<Complex> want = multiply(a, multiply(x, b));
    REQUIRE(max_abs_vec(vec_sub(act(compose(la, rb), x).v, want.v)) < 1e-12);
    // nonassociativity: la o lb differs from l_{ab} in general
    REQUIRE(max_abs_diff(compose(la, rb).m, la.m * rb.m) == 0.0);
  }
}

TEST_CASE("associativity collapse: composition of left operators") {
  // in an associative algebra  Lhat(a) Lhat(b) = Lhat(ab)  exactly
  auto mt = matrix_algebra<ExactComplex>(2);
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 5; ++trial) {
    auto a = random_element_exact(mt.alg, rng);
    auto b = random_element_exact(mt.alg, rng);
    Mat<ExactComplex> lhs = compose(left_op(a), left_op(b)).m;
    Mat<ExactComplex> rhs = left_op(multiply(a, b)).m;
    REQUIRE(max_abs_diff(lhs, rhs) == 0.0);
    // and left commutes with right
    Mat<ExactComplex> c1 = compose(left_op(a), right_op(b)).m;
    Mat<ExactComplex> c2 = compose(right_op(b), left_op(a)).m;
    REQUIRE(max_abs_diff(c1, c2) == 0.0);
  }
  // commutativity collapse: jordan left = right
  auto jd = jordan_matrix_algebra<ExactComplex>(2);
  for (int trial = 0; trial < 5; ++trial) {
    auto a = random_element_exact(jd.alg, rng);
    REQUIRE(max_abs_diff(left_op(a).m, right_op(a).m) == 0.0);
  }
  // the octonions do NOT collapse
  auto oc = octonion_algebra<Complex>();
  Mat<Complex> l1l2 = compose(left_op(basis_element(oc.alg, 1)),
                              left_op(basis_element(oc.alg, 2))).m;
  Mat<Complex> l12 = left_op(multiply(basis_element(oc.alg, 1), basis_element(oc.alg, 2))).m;
  REQUIRE(max_abs_diff(l1l2, l12) > 0.5);
}

static MultOp<naqm::Complex> random_word(const naqm::AlgebraPtr<naqm::Complex>& alg,
                                         std::mt19937_64& rng) {
  return naqm::random_word_op(alg, rng, 3);
}

TEST_CASE("prime reverses and swaps left/right") {
  auto inst = octonion_algebra<Complex>();
  std::mt19937_64 rng(47);
  // prime(Lhat a) = Rhat a
  Element<Complex> a = random_element(inst.alg, rng);
  REQUIRE(max_abs_diff(prime_op(left_op(a)).m, right_op(a).m) < 1e-14);
  REQUIRE(max_abs_diff(prime_op(right_op(a)).m, left_op(a).m) < 1e-14);
  for (int trial = 0; trial < 20; ++trial) {
    MultOp<Complex> x = random_word(inst.alg, rng), y = random_word(inst.alg, rng);
    // antihomomorphism and involution
    REQUIRE(max_abs_diff(prime_op(compose(x, y)).m, compose(prime_op(y), prime_op(x)).m) < 1e-10);
    REQUIRE(max_abs_diff(prime_op(prime_op(x)).m, x.m) < 1e-12);
    // linearity: prime of i x = i prime(x)
    REQUIRE(max_abs_diff(prime_op(scale_op(Complex(0, 1), x)).m,
                         scale_op(Complex(0, 1), prime_op(x)).m) < 1e-12);
  }
  REQUIRE_THROWS_AS(prime_op(MultOp<Complex>{inst.alg, Mat<Complex>::identity(8), std::nullopt}),
                    UnsupportedOperation);
}

TEST_CASE("star on operators: antilinear antihomomorphism extending the element star") {
  auto inst = octonion_algebra<Complex>();
  std::mt19937_64 rng(53);
  Element<Complex> a = random_element(inst.alg, rng);
  REQUIRE(max_abs_diff(star_op(left_op(a)).m, left_op(star(a)).m) < 1e-14);
  REQUIRE(max_abs_diff(star_op(right_op(a)).m, right_op(star(a)).m) < 1e-14);
  for (int trial = 0; trial < 20; ++trial) {
    MultOp<Complex> x = random_word(inst.alg, rng), y = random_word(inst.alg, rng);
    REQUIRE(max_abs_diff(star_op(compose(x, y)).m, compose(star_op(y), star_op(x)).m) < 1e-10);
    REQUIRE(max_abs_diff(star_op(star_op(x)).m, x.m) < 1e-10);
    // antilinearity
    REQUIRE(max_abs_diff(star_op(scale_op(Complex(0, 1), x)).m,
                         scale_op(Complex(0, -1), star_op(x)).m) < 1e-12);
  }
}

TEST_CASE("the conjugation lemma ties prime, star and the element involution") {
  // ((prime X) acting on x)^* = (star X) acting on x^*
  auto inst = octonion_algebra<Complex>();
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 25; ++trial) {
    MultOp<Complex> X = random_word(inst.alg, rng);
    Element<Complex> x = random_element(inst.alg, rng);
    Element<Complex> lhs = star(act(prime_op(X), x));
    Element<Complex> rhs = act(star_op(X), star(x));
    REQUIRE(max_abs_vec(vec_sub(lhs.v, rhs.v)) < 1e-10);
  }
}

TEST_CASE("trace adjoint agrees with the word star on faithful instances") {
  for (auto inst : {octonion_algebra<Complex>(), jordan_matrix_algebra<Complex>(2)}) {
    Mat<Complex> g = gram_matrix(inst.trace);
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 15; ++trial) {
      MultOp<Complex> X = random_word(inst.alg, rng);
      REQUIRE(max_abs_diff(trace_adjoint(X, g).m, star_op(X).m) < 1e-9);
    }
  }
}

TEST_CASE("generated operator algebra dimensions") {
  REQUIRE(multiplication_algebra(matrix_algebra<Complex>(2).alg).dim() == 16);
  REQUIRE(multiplication_algebra(jordan_matrix_algebra<Complex>(3).alg).dim() == 81);
  auto oct = multiplication_algebra(octonion_algebra<Complex>().alg);
  REQUIRE(oct.dim() == 64);
  REQUIRE(oct.closed);

  // exact mode reproduces the dimensions with zero-tolerance pivoting
  REQUIRE(multiplication_algebra(matrix_algebra<ExactComplex>(2).alg).dim() == 16);
  REQUIRE(multiplication_algebra(octonion_algebra<ExactComplex>().alg).dim() == 64);
}

TEST_CASE("closure dimension does not depend on the generator order") {
  auto inst = octonion_algebra<Complex>();
  std::vector<MultOp<Complex>> gens;
  for (int mu = 0; mu < 8; ++mu) gens.push_back(left_op(basis_element(inst.alg, mu)));
  for (int mu = 0; mu < 8; ++mu) gens.push_back(right_op(basis_element(inst.alg, mu)));
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 4; ++trial) {
    std::shuffle(gens.begin(), gens.end(), rng);
    auto sub = span_closure(inst.alg, gens);
    REQUIRE(sub.dim() == 64);
    REQUIRE(sub.closed);
  }
}

TEST_CASE("proper generated subalgebras") {
  // a single left generator on the jordan instance generates a small
  // commutative subalgebra, flagged closed, of dimension < n^2
  auto jd = jordan_matrix_algebra<Complex>(2);
  Element<Complex> z = basis_element(jd.alg, 0) - basis_element(jd.alg, 3);
  auto sub = span_closure(jd.alg, {left_op(z)});
  REQUIRE(sub.closed);
  REQUIRE(sub.dim() == 3);  // {1, Lhat(z), Lhat(z)^2} and Lhat(z)^3 = Lhat(z)
}

TEST_CASE("coordinates in a closed basis reproduce the operator") {
  auto inst = octonion_algebra<Complex>();
  auto sub = multiplication_algebra(inst.alg);
  std::mt19937_64 rng(71);
  MultOp<Complex> X = random_word(inst.alg, rng);
  Vec<Complex> c = coordinates_in_basis(sub, X);
  Mat<Complex> rebuilt(8, 8);
  for (int j = 0; j < sub.dim(); ++j)
    rebuilt = rebuilt + c[static_cast<size_t>(j)] * sub.basis[static_cast<size_t>(j)].m;
  REQUIRE(max_abs_diff(rebuilt, X.m) < 1e-9);

  // an operator outside the span is rejected: on the su(2) unitization the
  // multiplication algebra is tiny, so a generic matrix cannot be expressed
  auto lu = su2_unitization<Complex>();
  auto small = multiplication_algebra(lu.alg);
  REQUIRE(small.dim() < 16);
  Mat<Complex> alien(4, 4);
  alien(0, 1) = Complex(1, 0);
  alien(2, 3) = Complex(0, 1);
  alien(3, 0) = Complex(2, 0);
  REQUIRE_THROWS_AS(coordinates_in_basis(small, MultOp<Complex>{lu.alg, alien, std::nullopt}),
                    ValidationError);
}
