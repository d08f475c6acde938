// Two-level precession inside the commutative spin factor {1, x, y, z}.
// The Hamiltonian is built purely from nonassociativity data,
//   H = scale * Lhat(z(yy) - (zy)y),
// which for this algebra equals scale * Lhat(z).  Evolving
// psi0 = (1 + z)/sqrt(2) gives the closed form
//   a(t) = d(t) = exp(-i w t)/sqrt(2),  b(t) = c(t) = 0.

#include <cmath>
#include <cstdio>

#include "naqm/naqm.hpp"

using namespace naqm;

int main() {
  Instance<Complex> inst = pauli_jordan<Complex>();
  const double hbar = 1.0, omega = 2.0;

  Element<Complex> y = basis_element(inst.alg, 2);
  Element<Complex> z = basis_element(inst.alg, 3);
  MultOp<Complex> hop = bonafide_hamiltonian(y, z, Complex(hbar * omega, 0.0));
  Hamiltonian<Complex> H = make_hamiltonian(hop, hbar, inst.trace);

  const double s = 1.0 / std::sqrt(2.0);
  Element<Complex> psi0{inst.alg, {Complex(s, 0), Complex(0, 0), Complex(0, 0), Complex(s, 0)}};

  double max_err = 0.0;
  std::printf("   t        re a(t)       im a(t)     |err|\n");
  for (const auto& [t, psi] : schrodinger_trajectory(H, psi0, 0.0, 4.0, 8)) {
    Complex closed = s * std::exp(Complex(0, -omega * t));
    double err = std::max(std::abs(psi.v[0] - closed), std::abs(psi.v[3] - closed));
    err = std::max(err, std::max(std::abs(psi.v[1]), std::abs(psi.v[2])));
    max_err = std::max(max_err, err);
    std::printf("%5.2f  %12.8f  %12.8f  %.3e\n", t, psi.v[0].real(), psi.v[0].imag(), err);
  }
  std::printf("max deviation from the closed form: %.3e\n", max_err);

  // Heisenberg picture cross check at one time
  const double t = 1.375;
  Element<Complex> psi_t = schrodinger_evolve(H, psi0, t);
  MultOp<Complex> X = left_op(basis_element(inst.alg, 1));
  Complex sch = inst.trace(multiply(star(psi_t), act(X, psi_t)));
  Complex hei = inst.trace(multiply(star(psi0), act(heisenberg_evolve(H, X, t), psi0)));
  std::printf("picture agreement |<x>_S - <x>_H| = %.3e\n", std::abs(sch - hei));
  return max_err < 1e-9 ? 0 : 1;
}
