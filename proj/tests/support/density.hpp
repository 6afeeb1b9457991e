#pragma once

#include <Eigen/Dense>
#include <array>

#include "risqn/entanglement.hpp"

namespace risqn::testing {

// Two qubits in the computational basis |ab>, a = matter qubit, b = photon.
using Mat4 = Eigen::Matrix4d;
using Mat2 = Eigen::Matrix2d;
using Vec4 = Eigen::Vector4d;

inline Mat2 pauli_x() { return (Mat2() << 0, 1, 1, 0).finished(); }
inline Mat2 pauli_z() { return (Mat2() << 1, 0, 0, -1).finished(); }

inline Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

/// Bell vectors Phi_mn = (X^m Z^n (x) I)|Phi+>, ordered 00, 01, 10, 11.
inline std::array<Vec4, 4> bell_basis() {
  const Vec4 phi_plus = Vec4(1, 0, 0, 1) / std::sqrt(2.0);
  const Mat2 id = Mat2::Identity();
  std::array<Vec4, 4> out;
  for (int m = 0; m < 2; ++m) {
    for (int n = 0; n < 2; ++n) {
      Mat2 op = id;
      if (n) op = pauli_z() * op;
      if (m) op = pauli_x() * op;
      out[2 * m + n] = kron(op, id) * phi_plus;
    }
  }
  return out;
}

inline Mat4 density(const BellDiagonalState& s) {
  const auto b = bell_basis();
  const std::array<double, 4> l{s.l00, s.l01, s.l10, s.l11};
  Mat4 rho = Mat4::Zero();
  for (int k = 0; k < 4; ++k) rho += l[k] * b[k] * b[k].transpose();
  return rho;
}

/// rho -> (1 - q) rho + q (I/2 (x) Tr_a rho): the matter qubit is replaced by
/// the maximally mixed state with probability q.
inline Mat4 depolarize_matter(const Mat4& rho, double q) {
  Mat2 reduced = Mat2::Zero();
  for (int a = 0; a < 2; ++a) reduced += rho.block<2, 2>(2 * a, 2 * a);
  return (1.0 - q) * rho + q * kron(Mat2::Identity() / 2.0, reduced);
}

/// rho -> (1 - p) rho + p (I (x) Z) rho (I (x) Z).
inline Mat4 dephase_photon(const Mat4& rho, double p) {
  const Mat4 z = kron(Mat2::Identity(), pauli_z());
  return (1.0 - p) * rho + p * z * rho * z;
}

inline BellDiagonalState bell_coefficients(const Mat4& rho) {
  const auto b = bell_basis();
  std::array<double, 4> l{};
  for (int k = 0; k < 4; ++k) l[k] = b[k].dot(rho * b[k]);
  return {l[0], l[1], l[2], l[3]};
}

/// Delivered state after storage time t (coherence time T) and phase flip p2.
inline BellDiagonalState e2e_state_oracle(const BellDiagonalState& s, double t, double T, double p2) {
  const double q = 1.0 - std::exp(-t / T);
  return bell_coefficients(dephase_photon(depolarize_matter(density(s), q), p2));
}

}  // namespace risqn::testing
