#include "spinnet/su2.hpp"

#include <algorithm>
#include <cmath>

#include "spinnet/coloring.hpp"
#include "spinnet/error.hpp"

namespace spinnet::su2rep {

namespace {

constexpr int kMaxFactorial = 170;

double factorial(int n) {
  static const std::vector<double> table = [] {
    std::vector<double> t(kMaxFactorial + 1, 1.0);
    for (int i = 1; i <= kMaxFactorial; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  if (n < 0 || n > kMaxFactorial) throw DomainError("factorial argument out of range");
  return table[static_cast<std::size_t>(n)];
}

double binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

void check_color(int c) {
  if (c < 0) throw DomainError("color must be nonnegative");
  if (c > 80) throw DomainError("color " + std::to_string(c) + " is too large");
}

}  // namespace

GroupElement::GroupElement(double w, double x, double y, double z) {
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  if (!(n > 0) || !std::isfinite(n)) throw DomainError("quaternion must be nonzero and finite");
  q_ = {w / n, x / n, y / n, z / n};
}

double GroupElement::norm() const noexcept {
  return std::sqrt(q_[0] * q_[0] + q_[1] * q_[1] + q_[2] * q_[2] + q_[3] * q_[3]);
}

GroupElement GroupElement::inverse() const noexcept {
  return GroupElement(Raw{}, {q_[0], -q_[1], -q_[2], -q_[3]});
}

Eigen::Matrix2cd GroupElement::matrix() const {
  const Complex a(q_[0], q_[3]);
  const Complex b(q_[1], q_[2]);
  Eigen::Matrix2cd m;
  m << a, b, -std::conj(b), std::conj(a);
  return m;
}

GroupElement operator*(const GroupElement& p, const GroupElement& q) {
  const auto& a = p.q_;
  const auto& b = q.q_;
  return GroupElement(GroupElement::Raw{},
                      {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
                       a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
                       a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
                       a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]});
}

double distance(const GroupElement& a, const GroupElement& b) {
  double d = 0;
  for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(a.quaternion()[i] - b.quaternion()[i]));
  return d;
}

GroupElement haar_sample(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  for (;;) {
    const double w = normal(rng);
    const double x = normal(rng);
    const double y = normal(rng);
    const double z = normal(rng);
    if (w * w + x * x + y * y + z * z > 1e-300) return GroupElement(w, x, y, z);
  }
}

Eigen::MatrixXcd irrep_matrix(int color, const GroupElement& u) {
  check_color(color);
  const int c = color;
  const Complex a(u.w(), u.z());
  const Complex b(u.x(), u.y());
  const Complex minus_bbar = -std::conj(b);
  const Complex abar = std::conj(a);

  // Powers up to c of the four polynomial coefficients.
  auto powers = [c](Complex base) {
    std::vector<Complex> p(static_cast<std::size_t>(c) + 1, Complex(1, 0));
    for (int i = 1; i <= c; ++i) p[i] = p[i - 1] * base;
    return p;
  };
  const auto pa = powers(a);
  const auto pb = powers(b);
  const auto pmb = powers(minus_bbar);
  const auto pab = powers(abar);

  // Column p: image of xi^p eta^(c-p) under (xi, eta) -> (a xi - conj(b) eta,
  // b xi + conj(a) eta); row p': coefficient of xi^p' eta^(c-p').
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(c + 1, c + 1);
  for (int p = 0; p <= c; ++p) {
    for (int pp = 0; pp <= c; ++pp) {
      Complex coef(0, 0);
      for (int r = 0; r <= p; ++r) {
        const int s = c - pp - r;
        if (s < 0 || s > c - p) continue;
        coef += binomial(p, r) * binomial(c - p, s) * pa[p - r] * pmb[r] * pb[c - p - s] * pab[s];
      }
      const double scale = std::sqrt(factorial(pp) * factorial(c - pp) /
                                     (factorial(p) * factorial(c - p)));
      d(c - pp, c - p) = coef * scale;
    }
  }
  return d;
}

Eigen::MatrixXd epsilon_tensor(int color) {
  check_color(color);
  Eigen::MatrixXd eps = Eigen::MatrixXd::Zero(color + 1, color + 1);
  for (int i = 0; i <= color; ++i) eps(i, color - i) = (i % 2 == 0) ? 1.0 : -1.0;
  return eps;
}

IntertwinerTensor::IntertwinerTensor(std::array<int, 3> colors, std::vector<double> data)
    : colors_(colors), data_(std::move(data)) {
  for (int c : colors_) check_color(c);
  const auto s = shape();
  if (data_.size() != s[0] * s[1] * s[2]) throw DomainError("intertwiner data has wrong size");
}

std::array<std::size_t, 3> IntertwinerTensor::shape() const noexcept {
  return {static_cast<std::size_t>(colors_[0] + 1), static_cast<std::size_t>(colors_[1] + 1),
          static_cast<std::size_t>(colors_[2] + 1)};
}

double IntertwinerTensor::operator()(std::size_t i, std::size_t j, std::size_t k) const {
  const auto s = shape();
  return data_.at((i * s[1] + j) * s[2] + k);
}

double IntertwinerTensor::norm() const {
  double n = 0;
  for (double v : data_) n += v * v;
  return std::sqrt(n);
}

bool IntertwinerTensor::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return v == 0.0; });
}

IntertwinerTensor intertwiner(int c1, int c2, int c3) {
  for (int c : {c1, c2, c3}) check_color(c);
  const std::array<int, 3> colors{c1, c2, c3};
  std::vector<double> data(static_cast<std::size_t>((c1 + 1) * (c2 + 1) * (c3 + 1)), 0.0);
  if (!coloring::triple_admissible({c1, c2, c3})) return IntertwinerTensor(colors, std::move(data));

  // Racah's formula, in doubled units. Basis index i of color c has weight
  // m = c/2 - i, so j + m = c - i and j - m = i.
  const double delta = factorial((c1 + c2 - c3) / 2) * factorial((c1 - c2 + c3) / 2) *
                       factorial((-c1 + c2 + c3) / 2) / factorial((c1 + c2 + c3) / 2 + 1);
  for (int i1 = 0; i1 <= c1; ++i1) {
    for (int i2 = 0; i2 <= c2; ++i2) {
      // m1 + m2 + m3 = 0  <=>  i3 = (c1 + c2 + c3)/2 - i1 - i2 ... in doubled
      // units 2m3 = -(2m1 + 2m2).
      const int two_m1 = c1 - 2 * i1;
      const int two_m2 = c2 - 2 * i2;
      const int two_m3 = -two_m1 - two_m2;
      if (std::abs(two_m3) > c3 || (c3 - two_m3) % 2 != 0) continue;
      const int i3 = (c3 - two_m3) / 2;

      const int a1 = (c3 - c2 + two_m1) / 2;  // j3 - j2 + m1
      const int a2 = (c3 - c1 - two_m2) / 2;  // j3 - j1 - m2
      const int a3 = (c1 + c2 - c3) / 2;      // j1 + j2 - j3
      const int a4 = i1;                      // j1 - m1
      const int a5 = c2 - i2;                 // j2 + m2
      double sum = 0;
      const int k_min = std::max({0, -a1, -a2});
      const int k_max = std::min({a3, a4, a5});
      for (int k = k_min; k <= k_max; ++k) {
        const double term = 1.0 / (factorial(k) * factorial(a1 + k) * factorial(a2 + k) *
                                   factorial(a3 - k) * factorial(a4 - k) * factorial(a5 - k));
        sum += (k % 2 == 0) ? term : -term;
      }
      const int sign_exp = (c1 - c2 - two_m3) / 2;  // j1 - j2 - m3
      const double sign = (((sign_exp % 2) + 2) % 2 == 0) ? 1.0 : -1.0;
      const double root = std::sqrt(delta * factorial(c1 - i1) * factorial(i1) *
                                    factorial(c2 - i2) * factorial(i2) * factorial(c3 - i3) *
                                    factorial(i3));
      data[static_cast<std::size_t>((i1 * (c2 + 1) + i2) * (c3 + 1) + i3)] = sign * root * sum;
    }
  }

  double norm = 0;
  for (double v : data) norm += v * v;
  norm = std::sqrt(norm);
  if (!(norm > 0)) throw NumericError("3j tensor vanished for an admissible triple");
  double first = 0;
  for (double v : data) {
    if (std::abs(v) > 1e-14) {
      first = v;
      break;
    }
  }
  const double scale = (first < 0 ? -1.0 : 1.0) / norm;
  for (double& v : data) {
    v *= scale;
    if (std::abs(v) < 1e-15) v = 0.0;
  }
  return IntertwinerTensor(colors, std::move(data));
}

double invariance_residual(const IntertwinerTensor& t, const GroupElement& u) {
  const auto s = t.shape();
  const auto& c = t.colors();
  const Eigen::MatrixXcd r1 = irrep_matrix(c[0], u);
  const Eigen::MatrixXcd r2 = irrep_matrix(c[1], u);
  const Eigen::MatrixXcd r3 = irrep_matrix(c[2], u);
  double residual = 0;
  for (std::size_t a = 0; a < s[0]; ++a) {
    for (std::size_t b = 0; b < s[1]; ++b) {
      for (std::size_t d = 0; d < s[2]; ++d) {
        Complex acc(0, 0);
        for (std::size_t i = 0; i < s[0]; ++i) {
          for (std::size_t j = 0; j < s[1]; ++j) {
            const Complex rr = r1(a, i) * r2(b, j);
            for (std::size_t k = 0; k < s[2]; ++k) acc += rr * r3(d, k) * t(i, j, k);
          }
        }
        residual += std::norm(acc - t(a, b, d));
      }
    }
  }
  return std::sqrt(residual);
}

}  // namespace spinnet::su2rep
