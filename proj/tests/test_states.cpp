#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "helpers.hpp"

using namespace naqm;
using testutil::random_element;

namespace {

MultOp<Complex> oct_A(const Instance<Complex>& inst) {
  return scale_op(Complex(0, 1), left_op(basis_element(inst.alg, 7)));
}
MultOp<Complex> oct_B(const Instance<Complex>& inst) {
  return compose(left_op(basis_element(inst.alg, 1)),
                 compose(left_op(basis_element(inst.alg, 2)),
                         left_op(basis_element(inst.alg, 4))));
}

}  // namespace

TEST_CASE("bracketing classes collapse under cyclicity") {
  auto inst = octonion_algebra<Complex>();
  std::mt19937_64 rng(101);
  // four factors: 5 bracketings, at most 2 distinct trace values
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Element<Complex>> xs;
    for (int k = 0; k < 4; ++k) xs.push_back(random_element(inst.alg, rng));
    auto rep = bracketing_classes(inst.trace, xs);
    REQUIRE(rep.catalan_bracketings == 5);
    REQUIRE(rep.catalan_bound == 2);
    REQUIRE(rep.forms.size() == 5);
    REQUIRE(rep.distinct <= 2);
    // comb identity: the two combs always land in the same class
    REQUIRE(trace_comb_identity_residual(inst.trace, xs) < 1e-10);
  }
  // three factors: 2 bracketings, ONE value (full cyclic symmetry)
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Element<Complex>> xs;
    for (int k = 0; k < 3; ++k) xs.push_back(random_element(inst.alg, rng));
    auto rep = bracketing_classes(inst.trace, xs);
    REQUIRE(rep.catalan_bracketings == 2);
    REQUIRE(rep.distinct == 1);
  }
  // five factors on an associative instance: everything collapses to 1 class
  auto mt = matrix_algebra<Complex>(2);
  std::vector<Element<Complex>> ys;
  for (int k = 0; k < 5; ++k) ys.push_back(random_element(mt.alg, rng));
  auto rep5 = bracketing_classes(mt.trace, ys);
  REQUIRE(rep5.catalan_bracketings == 14);
  REQUIRE(rep5.distinct == 1);
}

TEST_CASE("catalan numbers") {
  REQUIRE(catalan(0) == 1);
  REQUIRE(catalan(1) == 1);
  REQUIRE(catalan(2) == 2);
  REQUIRE(catalan(3) == 5);
  REQUIRE(catalan(4) == 14);
  REQUIRE(catalan(10) == 16796);
}

TEST_CASE("tracial state landmarks on the octonions") {
  auto inst = octonion_algebra<Complex>();
  State<Complex> w = tracial_state(inst.trace);
  MultOp<Complex> A = oct_A(inst), B = oct_B(inst);

  // B acting on the unit lands on -e7
  Element<Complex> be0 = act(B, unit_element(inst.alg));
  Vec<Complex> want(8, Complex(0, 0));
  want[7] = Complex(-1, 0);
  REQUIRE(max_abs_vec(vec_sub(be0.v, want)) == 0.0);

  REQUIRE(std::abs(w(compose(A, B)) - Complex(0, 1)) < 1e-14);
  REQUIRE(std::abs(w(compose(B, A)) - Complex(0, -1)) < 1e-14);
  REQUIRE(std::abs(w(commutator_op(A, B)) - Complex(0, 2)) < 1e-14);

  // both are observables and square to the identity operator
  REQUIRE(observable_residual(A, inst.trace) < 1e-14);
  REQUIRE(observable_residual(B, inst.trace) < 1e-14);
  REQUIRE(max_abs_diff(compose(A, A).m, Mat<Complex>::identity(8)) == 0.0);
  REQUIRE(max_abs_diff(compose(B, B).m, Mat<Complex>::identity(8)) == 0.0);

  // saturated uncertainty product
  auto rel = check_uncertainty_relation(w, A, B);
  REQUIRE(rel.delta1 == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(rel.delta2 == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(rel.rhs == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(std::abs(rel.slack) < 1e-10);
  REQUIRE(rel.holds);
}

TEST_CASE("the same landmarks hold with exact scalars") {
  auto inst = octonion_algebra<ExactComplex>();
  using T = ScalarTraits<ExactComplex>;
  State<ExactComplex> w = tracial_state(inst.trace);
  MultOp<ExactComplex> A = scale_op(T::i(), left_op(basis_element(inst.alg, 7)));
  MultOp<ExactComplex> B = compose(left_op(basis_element(inst.alg, 1)),
                                   compose(left_op(basis_element(inst.alg, 2)),
                                           left_op(basis_element(inst.alg, 4))));
  ExactComplex two_i{Rational(0), Rational(2)};
  REQUIRE(w(commutator_op(A, B)) == two_i);
  // stars: A and B are exactly self-star
  REQUIRE(max_abs_diff(star_op(A).m, A.m) == 0.0);
  REQUIRE(max_abs_diff(star_op(B).m, B.m) == 0.0);
}

TEST_CASE("vector and mixed states evaluate and validate") {
  auto inst = octonion_algebra<Complex>();
  const double s = 1.0 / std::sqrt(2.0);
  Vec<Complex> psi_v(8, Complex(0, 0));
  psi_v[0] = Complex(s, 0);
  psi_v[1] = Complex(s, 0);
  Element<Complex> psi{inst.alg, psi_v};
  State<Complex> wv = vector_state(inst.trace, psi);

  // w_psi(X) = tau(psi^* (X psi)) by hand for a couple of operators
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 10; ++trial) {
    MultOp<Complex> X = random_word_op(inst.alg, rng, 2);
    Complex direct = inst.trace(multiply(star(psi), act(X, psi)));
    REQUIRE(std::abs(wv(X) - direct) < 1e-12);
  }

  // density element of this psi is the unit: psi psi^* = e0
  auto de = density_element(inst.trace, psi);
  Vec<Complex> e0(8, Complex(0, 0));
  e0[0] = Complex(1, 0);
  REQUIRE(max_abs_vec(vec_sub(de.rho.v, e0)) < 1e-14);

  // unnormalized input is rejected, or normalized on request
  Element<Complex> big = Complex(2.0, 0.0) * psi;
  REQUIRE_THROWS_AS(vector_state(inst.trace, big), ValidationError);
  State<Complex> wn = vector_state(inst.trace, big, /*normalize=*/true);
  REQUIRE(std::abs(wn(identity_op(inst.alg)) - Complex(1, 0)) < 1e-12);

  // mixed state is the convex combination of its parts
  Vec<Complex> phi_v(8, Complex(0, 0));
  phi_v[2] = Complex(1, 0);
  Element<Complex> phi{inst.alg, phi_v};
  State<Complex> wm = mixed_state(inst.trace, {Complex(0.25, 0), Complex(0.75, 0)}, {psi, phi});
  State<Complex> wp = vector_state(inst.trace, phi);
  for (int trial = 0; trial < 10; ++trial) {
    MultOp<Complex> X = random_word_op(inst.alg, rng, 2);
    REQUIRE(std::abs(wm(X) - (0.25 * wv(X) + 0.75 * wp(X))) < 1e-12);
  }
  REQUIRE_THROWS_AS(mixed_state(inst.trace, {Complex(0.5, 0)}, {psi, phi}), ValidationError);
  REQUIRE_THROWS_AS(
      mixed_state(inst.trace, {Complex(0.5, 0), Complex(0.25, 0)}, {psi, phi}),
      ValidationError);
}

TEST_CASE("state axioms hold for every standard state") {
  auto oct = octonion_algebra<Complex>();
  auto jd = jordan_matrix_algebra<Complex>(2);
  REQUIRE(check_state(tracial_state(oct.trace)).all_pass());
  REQUIRE(check_state(tracial_state(jd.trace)).all_pass());

  Vec<Complex> v(8, Complex(0, 0));
  v[0] = Complex(0.6, 0);
  v[3] = Complex(0, 0.8);
  State<Complex> wv = vector_state(oct.trace, Element<Complex>{oct.alg, v});
  REQUIRE(check_state(wv).all_pass());

  Vec<Complex> u(4, Complex(0, 0));
  u[0] = Complex(1, 0);  // e11 in the jordan instance has norm 1/sqrt(1/2)...
  // tau(e11 e11) = 1/2, so normalize
  State<Complex> wj =
      vector_state(jd.trace, Element<Complex>{jd.alg, u}, /*normalize=*/true);
  REQUIRE(check_state(wj).all_pass());
}

TEST_CASE("cauchy schwartz and conjugation symmetry explicitly") {
  auto inst = octonion_algebra<Complex>();
  State<Complex> w = tracial_state(inst.trace);
  std::mt19937_64 rng(107);
  for (int trial = 0; trial < 40; ++trial) {
    MultOp<Complex> X = random_word_op(inst.alg, rng, 2), Y = random_word_op(inst.alg, rng, 2);
    REQUIRE(cauchy_schwartz_check(w, X, Y));
    Complex lhs = w(compose(star_op(X), Y));
    Complex rhs = std::conj(w(compose(star_op(Y), X)));
    REQUIRE(std::abs(lhs - rhs) < 1e-9);
    // positivity
    REQUIRE(w(compose(star_op(X), X)).real() > -1e-12);
  }
}

TEST_CASE("uncertainty relation holds across random observables") {
  auto inst = octonion_algebra<Complex>();
  State<Complex> w = tracial_state(inst.trace);
  std::mt19937_64 rng(109);
  int tested = 0;
  for (int trial = 0; trial < 60 && tested < 25; ++trial) {
    MultOp<Complex> X = random_word_op(inst.alg, rng, 2), Y = random_word_op(inst.alg, rng, 2);
    // symmetrize into observables
    MultOp<Complex> O1 = add_op(X, star_op(X));
    MultOp<Complex> O2 = add_op(Y, star_op(Y));
    if (observable_residual(O1, inst.trace) > 1e-10) continue;
    if (observable_residual(O2, inst.trace) > 1e-10) continue;
    auto rel = check_uncertainty_relation(w, O1, O2);
    REQUIRE(rel.holds);
    ++tested;
  }
  REQUIRE(tested >= 25);
}

TEST_CASE("non-observables are rejected by uncertainty") {
  auto inst = octonion_algebra<Complex>();
  State<Complex> w = tracial_state(inst.trace);
  // Lhat(e1) is skew under the star, not an observable
  MultOp<Complex> X = left_op(basis_element(inst.alg, 1));
  REQUIRE(observable_residual(X, inst.trace) > 0.5);
  REQUIRE_THROWS_AS(uncertainty(w, X), ValidationError);
}

TEST_CASE("density elements of mixed families and entropy") {
  auto inst = octonion_algebra<Complex>();
  Vec<Complex> a(8, Complex(0, 0)), b(8, Complex(0, 0));
  a[0] = Complex(1, 0);
  b[1] = Complex(1, 0);
  Element<Complex> ea{inst.alg, a}, eb{inst.alg, b};
  auto de = density_element(inst.trace, {Complex(0.5, 0), Complex(0.5, 0)}, {ea, eb});
  // rho = (1/2)(e0 e0^*) + (1/2)(e1 e1^*) = (1/2)e0 + (1/2)e0 = e0
  Vec<Complex> e0(8, Complex(0, 0));
  e0[0] = Complex(1, 0);
  REQUIRE(max_abs_vec(vec_sub(de.rho.v, e0)) < 1e-14);
  REQUIRE(shannon_entropy({0.5, 0.5}) == Catch::Approx(std::log(2.0)));
  REQUIRE(shannon_entropy({1.0, 0.0}) == Catch::Approx(0.0).margin(1e-15));
  REQUIRE_THROWS_AS(shannon_entropy({0.5, 0.25}), ValidationError);
}

TEST_CASE("raw states exist for numeric work only") {
  auto inst = octonion_algebra<Complex>();
  auto basis = std::make_shared<GeneratedSubalgebra<Complex>>(multiplication_algebra(inst.alg));
  std::vector<Complex> vals(static_cast<size_t>(basis->dim()), Complex(0, 0));
  vals[0] = Complex(1, 0);  // normalized on the identity, zero elsewhere
  State<Complex> w = raw_state(basis, vals);
  REQUIRE(std::abs(w(identity_op(inst.alg)) - Complex(1, 0)) < 1e-12);
}
