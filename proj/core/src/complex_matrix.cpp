// Copyright 2026 The paulitomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "paulitomo/complex_matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace paulitomo {

ComplexMatrix2 ComplexMatrix2::adjoint() const {
  return {std::conj(e_[0][0]), std::conj(e_[1][0]), std::conj(e_[0][1]), std::conj(e_[1][1])};
}

ComplexMatrix2 ComplexMatrix2::transpose() const {
  return {e_[0][0], e_[1][0], e_[0][1], e_[1][1]};
}

ComplexMatrix2 ComplexMatrix2::conjugate() const {
  return {std::conj(e_[0][0]), std::conj(e_[0][1]), std::conj(e_[1][0]), std::conj(e_[1][1])};
}

ComplexMatrix2 ComplexMatrix2::inverse() const {
  const complexd d = det();
  if (std::abs(d) == 0.0) {
    throw std::domain_error("ComplexMatrix2::inverse: matrix is singular");
  }
  const complexd inv_d = 1.0 / d;
  return {e_[1][1] * inv_d, -e_[0][1] * inv_d, -e_[1][0] * inv_d, e_[0][0] * inv_d};
}

double ComplexMatrix2::frobenius_norm() const {
  double s = 0.0;
  for (const auto& row : e_) {
    for (const complexd& x : row) {
      s += std::norm(x);
    }
  }
  return std::sqrt(s);
}

double ComplexMatrix2::max_abs() const {
  double m = 0.0;
  for (const auto& row : e_) {
    for (const complexd& x : row) {
      m = std::max(m, std::abs(x));
    }
  }
  return m;
}

bool ComplexMatrix2::is_finite() const {
  for (const auto& row : e_) {
    for (const complexd& x : row) {
      if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
        return false;
      }
    }
  }
  return true;
}

bool ComplexMatrix2::approx_equal(const ComplexMatrix2& other, double tol) const {
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      if (std::abs((*this)(r, c) - other(r, c)) > tol) {
        return false;
      }
    }
  }
  return true;
}

bool ComplexMatrix2::is_unitary(double tol) const {
  return is_finite() && (adjoint() * (*this)).approx_equal(identity(), tol);
}

ComplexMatrix2& ComplexMatrix2::operator+=(const ComplexMatrix2& other) {
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      (*this)(r, c) += other(r, c);
    }
  }
  return *this;
}

ComplexMatrix2& ComplexMatrix2::operator-=(const ComplexMatrix2& other) {
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      (*this)(r, c) -= other(r, c);
    }
  }
  return *this;
}

ComplexMatrix2& ComplexMatrix2::operator*=(complexd scalar) {
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      (*this)(r, c) *= scalar;
    }
  }
  return *this;
}

ComplexMatrix2 operator+(ComplexMatrix2 a, const ComplexMatrix2& b) { return a += b; }
ComplexMatrix2 operator-(ComplexMatrix2 a, const ComplexMatrix2& b) { return a -= b; }

ComplexMatrix2 operator*(const ComplexMatrix2& a, const ComplexMatrix2& b) {
  ComplexMatrix2 out;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      out(r, c) = a(r, 0) * b(0, c) + a(r, 1) * b(1, c);
    }
  }
  return out;
}

ComplexMatrix2 operator*(complexd scalar, ComplexMatrix2 a) { return a *= scalar; }
ComplexMatrix2 operator*(ComplexMatrix2 a, complexd scalar) { return a *= scalar; }

ComplexMatrix2 polar_unitary_factor(const ComplexMatrix2& a) {
  // U_p = A (A^dag A)^{-1/2}. For 2x2 Hermitian positive definite H,
  //   sqrt(H) = (H + sqrt(det H) I) / sqrt(tr H + 2 sqrt(det H)).
  // Unlike an eigendecomposition this form has no cancellation when the
  // singular values nearly coincide, the common case for inputs that are
  // already almost unitary.
  const ComplexMatrix2 h = a.adjoint() * a;
  const double t = h.trace().real();
  const double s = std::abs(a.det());  // sqrt(det H) without forming det H
  if (!(t > 0.0) || s <= t * 1e-14) {
    throw std::domain_error("polar_unitary_factor: input is numerically singular");
  }
  ComplexMatrix2 sqrt_h = h;
  sqrt_h(0, 0) += s;
  sqrt_h(1, 1) += s;
  sqrt_h *= 1.0 / std::sqrt(t + 2.0 * s);
  return a * sqrt_h.inverse();
}

RotationMatrix3 RotationMatrix3::identity() {
  RotationMatrix3 r;
  for (int i = 0; i < 3; ++i) {
    r(i, i) = 1.0;
  }
  return r;
}

RotationMatrix3 RotationMatrix3::transpose() const {
  RotationMatrix3 out;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      out(c, r) = (*this)(r, c);
    }
  }
  return out;
}

double RotationMatrix3::det() const {
  const auto& m = *this;
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

bool RotationMatrix3::is_orthogonal(double tol) const {
  const RotationMatrix3 g = (*this) * transpose();
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      const double want = (r == c) ? 1.0 : 0.0;
      if (std::abs(g(r, c) - want) > tol) {
        return false;
      }
    }
  }
  return true;
}

bool RotationMatrix3::approx_equal(const RotationMatrix3& other, double tol) const {
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      if (std::abs((*this)(r, c) - other(r, c)) > tol) {
        return false;
      }
    }
  }
  return true;
}

RotationMatrix3 operator*(const RotationMatrix3& a, const RotationMatrix3& b) {
  RotationMatrix3 out;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) {
        s += a(r, k) * b(k, c);
      }
      out(r, c) = s;
    }
  }
  return out;
}

}  // namespace paulitomo
