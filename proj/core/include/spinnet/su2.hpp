#pragma once

// SU(2) as unit quaternions and its irreducible representations.
//
// The quaternion w + xi + yj + zk is the matrix
//   [[ w + iz,  x + iy],
//    [-x + iy,  w - iz]],
// so Tr = 2w and quaternion multiplication is matrix multiplication.
// The spin c/2 representation acts on degree-c polynomials in (xi, eta);
// basis vectors are ordered by weight, highest first.

#include <array>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace spinnet::su2rep {

using Complex = std::complex<double>;
using Rng = std::mt19937_64;

class GroupElement {
 public:
  constexpr GroupElement() = default;
  // Normalizes the quaternion; throws DomainError for a zero quaternion.
  GroupElement(double w, double x, double y, double z);

  static constexpr GroupElement identity() { return GroupElement(); }
  static GroupElement minus_identity() { return GroupElement(-1, 0, 0, 0); }

  double w() const noexcept { return q_[0]; }
  double x() const noexcept { return q_[1]; }
  double y() const noexcept { return q_[2]; }
  double z() const noexcept { return q_[3]; }
  const std::array<double, 4>& quaternion() const noexcept { return q_; }

  double trace() const noexcept { return 2 * q_[0]; }
  double norm() const noexcept;
  GroupElement inverse() const noexcept;
  Eigen::Matrix2cd matrix() const;

  friend GroupElement operator*(const GroupElement& a, const GroupElement& b);
  friend bool operator==(const GroupElement&, const GroupElement&) = default;

 private:
  struct Raw {};
  constexpr GroupElement(Raw, std::array<double, 4> q) : q_(q) {}

  std::array<double, 4> q_{1, 0, 0, 0};
};

// Largest absolute quaternion component difference.
double distance(const GroupElement& a, const GroupElement& b);

// Haar-distributed element: four independent standard normals, normalized.
GroupElement haar_sample(Rng& rng);

// Spin c/2 representation matrix, (c+1) x (c+1).
Eigen::MatrixXcd irrep_matrix(int color, const GroupElement& u);

// Invariant bilinear form on the spin c/2 space: rho^T eps rho = eps,
// eps[i][c-i] = (-1)^i, eps^2 = (-1)^c.
Eigen::MatrixXd epsilon_tensor(int color);

// Unit vector of the one-dimensional invariant subspace of
// V_c1 (x) V_c2 (x) V_c3, or the zero tensor when the triple is not
// admissible. Entries are real; the first nonzero entry in row-major order
// is positive.
class IntertwinerTensor {
 public:
  IntertwinerTensor(std::array<int, 3> colors, std::vector<double> data);

  const std::array<int, 3>& colors() const noexcept { return colors_; }
  std::array<std::size_t, 3> shape() const noexcept;
  double operator()(std::size_t i, std::size_t j, std::size_t k) const;
  const std::vector<double>& data() const noexcept { return data_; }
  double norm() const;
  bool is_zero() const;

 private:
  std::array<int, 3> colors_;
  std::vector<double> data_;
};

// Built from the Racah closed form for Wigner 3j symbols.
IntertwinerTensor intertwiner(int c1, int c2, int c3);

// || (rho1 (x) rho2 (x) rho3)(u) T - T ||_F
double invariance_residual(const IntertwinerTensor& t, const GroupElement& u);

}  // namespace spinnet::su2rep
