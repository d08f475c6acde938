// A pair of observables on the octonions that saturates the uncertainty bound
// in the tracial state: A = i*Lhat(e7), B = Lhat(e1) Lhat(e2) Lhat(e4).
// Both square to the identity operator, both have zero mean, and the trace of
// their commutator is 2i, so Delta(A) Delta(B) = 1 = (1/2)|<[A,B]>|.

#include <cstdio>

#include "naqm/naqm.hpp"

using namespace naqm;

int main() {
  Instance<Complex> inst = octonion_algebra<Complex>();
  State<Complex> w = tracial_state(inst.trace);

  MultOp<Complex> A = scale_op(Complex(0, 1), left_op(basis_element(inst.alg, 7)));
  MultOp<Complex> B = compose(left_op(basis_element(inst.alg, 1)),
                              compose(left_op(basis_element(inst.alg, 2)),
                                      left_op(basis_element(inst.alg, 4))));

  Complex comm = w(commutator_op(A, B));
  UncertaintyRelation rel = check_uncertainty_relation(w, A, B, 1e-10);

  std::printf("observable residual A: %.3e\n", observable_residual(A, inst.trace));
  std::printf("observable residual B: %.3e\n", observable_residual(B, inst.trace));
  std::printf("<[A,B]>          = %.12f + %.12fi\n", comm.real(), comm.imag());
  std::printf("Delta A          = %.12f\n", rel.delta1);
  std::printf("Delta B          = %.12f\n", rel.delta2);
  std::printf("product          = %.12f\n", rel.lhs);
  std::printf("bound (1/2)|...| = %.12f\n", rel.rhs);
  std::printf("slack            = %.3e\n", rel.slack);
  std::printf("%s\n", std::abs(rel.slack) < 1e-10 ? "bound saturated" : "bound not saturated");
  return 0;
}
