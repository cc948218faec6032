#ifndef SPINNET_TYPES_HPP
#define SPINNET_TYPES_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace spinnet {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

enum class Axis { x, y, z };

inline constexpr Axis kAxes[3] = {Axis::x, Axis::y, Axis::z};

inline const char* axis_name(Axis a) {
  switch (a) {
    case Axis::x: return "x";
    case Axis::y: return "y";
    default: return "z";
  }
}

// tolerances used across the library
inline constexpr double kHermTol = 1e-12;     // builder hermiticity / skewness
inline constexpr double kLeakTol = 1e-10;     // subspace invariance leakage
inline constexpr double kClosureTol = 1e-9;   // closure rank decisions
inline constexpr long kDefaultDimCap = 64;    // max full-space dimension for dense work

/// Real Hilbert-Schmidt inner product Re tr(A^dag B).
inline double hs_inner(const Matrix& a, const Matrix& b) {
  return a.cwiseProduct(b.conjugate()).sum().real();
}

inline double hs_norm(const Matrix& a) { return a.norm(); }

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

inline bool is_hermitian(const Matrix& a, double rel_tol = kHermTol) {
  return (a - a.adjoint()).norm() <= rel_tol * std::max(1.0, a.norm());
}

inline bool is_skew_hermitian(const Matrix& a, double rel_tol = kHermTol) {
  return (a + a.adjoint()).norm() <= rel_tol * std::max(1.0, a.norm());
}

Matrix kron(const Matrix& a, const Matrix& b);

/// 2^n with overflow guard.
inline long pow2_checked(long n) {
  if (n < 0 || n > 62) throw std::invalid_argument("pow2_checked: exponent out of range");
  return 1L << n;
}

}  // namespace spinnet

#endif
