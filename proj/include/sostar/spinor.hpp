#pragma once

#include <complex>

#include <Eigen/Dense>

namespace sostar {

struct Spinor {
  std::complex<double> x;
  std::complex<double> y;
};

// |z] = (conj y, -conj x)
inline Spinor dual(const Spinor& z) { return {std::conj(z.y), -std::conj(z.x)}; }

// <a|b>
inline std::complex<double> braket(const Spinor& a, const Spinor& b) {
  return std::conj(a.x) * b.x + std::conj(a.y) * b.y;
}

// [a|b> = y_a x_b - x_a y_b
inline std::complex<double> square_ket(const Spinor& a, const Spinor& b) {
  return a.y * b.x - a.x * b.y;
}

// <a|b] = conj(x_a) conj(y_b) - conj(y_a) conj(x_b)
inline std::complex<double> bra_square(const Spinor& a, const Spinor& b) {
  return braket(a, dual(b));
}

inline double norm_sq(const Spinor& z) { return std::norm(z.x) + std::norm(z.y); }

// V = <z|sigma|z> / 2 with the Pauli vector sigma.
inline Eigen::Vector3d normal_vector(const Spinor& z) {
  std::complex<double> c = std::conj(z.x) * z.y;
  return {c.real(), c.imag(), 0.5 * (std::norm(z.x) - std::norm(z.y))};
}

}  // namespace sostar
