// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "rescurve/errors.hpp"
#include "rescurve/rng.hpp"

namespace rescurve {

using cx = std::complex<double>;
using CVector = std::vector<cx>;

/// Dense complex matrix, column-major.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static CMatrix identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  cx& operator()(std::size_t i, std::size_t j) { return data_[i + j * rows_]; }
  const cx& operator()(std::size_t i, std::size_t j) const { return data_[i + j * rows_]; }

  std::span<cx> col(std::size_t j) { return {data_.data() + j * rows_, rows_}; }
  std::span<const cx> col(std::size_t j) const { return {data_.data() + j * rows_, rows_}; }

  void set_col(std::size_t j, const CVector& v) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }
  CVector get_col(std::size_t j) const {
    return CVector(data_.begin() + static_cast<std::ptrdiff_t>(j * rows_),
                   data_.begin() + static_cast<std::ptrdiff_t>((j + 1) * rows_));
  }

  const std::vector<cx>& data() const noexcept { return data_; }
  std::vector<cx>& data() noexcept { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cx> data_;
};

/// Inner product, conjugate-linear in the FIRST argument:
/// inner(u, v) = sum_i conj(u_i) v_i. The component of v along a unit
/// vector w is inner(w, v) * w under this convention.
cx inner(const CVector& u, const CVector& v);

double norm2(const CVector& v);
double frobenius(const CMatrix& m);
double norm1(const CMatrix& m);  // max absolute column sum

void axpy(cx a, const CVector& x, CVector& y);  // y += a*x
CVector scaled(const CVector& v, cx a);

CVector matvec(const CMatrix& a, const CVector& x);
CMatrix matmul(const CMatrix& lhs, const CMatrix& rhs);
CMatrix transpose(const CMatrix& m);       // plain transpose, no conjugation
CMatrix conj_transpose(const CMatrix& m);

/// Project `candidate` onto the orthogonal complement of span(basis) and
/// normalize. Two modified Gram-Schmidt passes; the projected norm before
/// normalization must exceed 1e-8 or the candidate counts as degenerate.
CVector mgs_project_orthonormal(CVector candidate, std::span<const CVector> basis);

/// Unit vector orthogonal to all basis vectors, drawn from a seeded Gaussian
/// candidate; retries a fresh draw on a degenerate candidate, at most 8 times.
CVector random_unit_in_complement(std::size_t dim, std::span<const CVector> basis,
                                  GaussianSource& rng);

/// LU factorization with partial pivoting, PM = LU packed in one matrix.
struct LuFactors {
  CMatrix lu;
  std::vector<std::size_t> perm;  // row permutation applied to the rhs
};

LuFactors lu_factor(CMatrix m);
CVector lu_apply(const LuFactors& f, const CVector& b);
CMatrix lu_apply(const LuFactors& f, const CMatrix& b);

CVector lu_solve(const CMatrix& m, const CVector& b);
CMatrix lu_solve(const CMatrix& m, const CMatrix& b);

/// Smallest |pivot| met while factoring (no singularity throw); the
/// independence proxy used on Gram matrices. Returns 0 on total collapse.
double lu_min_pivot(CMatrix m);

}  // namespace rescurve
