// SPDX-License-Identifier: Apache-2.0

#include "rescurve/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace rescurve {

namespace {

constexpr double kDegeneracyFloor = 1e-8;
constexpr double kPivotFloorRel = 1e-14;

void require_same_dim(const CVector& u, const CVector& v, const char* where) {
  if (u.size() != v.size())
    fail(errc::dimension_mismatch, std::string(where) + ": " + std::to_string(u.size()) +
                                       " vs " + std::to_string(v.size()));
}

}  // namespace

cx inner(const CVector& u, const CVector& v) {
  require_same_dim(u, v, "inner");
  cx acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += std::conj(u[i]) * v[i];
  return acc;
}

double norm2(const CVector& v) {
  double acc = 0.0;
  for (const cx& x : v) acc += std::norm(x);
  return std::sqrt(acc);
}

double frobenius(const CMatrix& m) {
  double acc = 0.0;
  for (const cx& x : m.data()) acc += std::norm(x);
  return std::sqrt(acc);
}

double norm1(const CMatrix& m) {
  double best = 0.0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double s = 0.0;
    for (const cx& x : m.col(j)) s += std::abs(x);
    best = std::max(best, s);
  }
  return best;
}

void axpy(cx a, const CVector& x, CVector& y) {
  require_same_dim(x, y, "axpy");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

CVector scaled(const CVector& v, cx a) {
  CVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = a * v[i];
  return out;
}

CVector matvec(const CMatrix& a, const CVector& x) {
  if (a.cols() != x.size()) fail(errc::dimension_mismatch, "matvec: cols != len(x)");
  CVector y(a.rows(), 0.0);
  for (std::size_t j = 0; j < a.cols(); ++j) {
    const cx xj = x[j];
    if (xj == 0.0) continue;
    auto col = a.col(j);
    for (std::size_t i = 0; i < a.rows(); ++i) y[i] += col[i] * xj;
  }
  return y;
}

CMatrix matmul(const CMatrix& lhs, const CMatrix& rhs) {
  if (lhs.cols() != rhs.rows()) fail(errc::dimension_mismatch, "matmul: inner dims differ");
  CMatrix out(lhs.rows(), rhs.cols());
  for (std::size_t j = 0; j < rhs.cols(); ++j) {
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const cx r = rhs(k, j);
      if (r == 0.0) continue;
      auto col = lhs.col(k);
      for (std::size_t i = 0; i < lhs.rows(); ++i) out(i, j) += col[i] * r;
    }
  }
  return out;
}

CMatrix transpose(const CMatrix& m) {
  CMatrix out(m.cols(), m.rows());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) out(j, i) = m(i, j);
  return out;
}

CMatrix conj_transpose(const CMatrix& m) {
  CMatrix out(m.cols(), m.rows());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) out(j, i) = std::conj(m(i, j));
  return out;
}

CVector mgs_project_orthonormal(CVector candidate, std::span<const CVector> basis) {
  for (const CVector& b : basis) require_same_dim(b, candidate, "mgs_project_orthonormal");
  // Two passes: the second cleans up what the first leaves behind.
  for (int pass = 0; pass < 2; ++pass) {
    for (const CVector& b : basis) {
      const cx c = inner(b, candidate);
      axpy(-c, b, candidate);
    }
  }
  const double nrm = norm2(candidate);
  if (nrm <= kDegeneracyFloor)
    fail(errc::degenerate_candidate,
         "projected norm " + std::to_string(nrm) + " below 1e-8");
  for (cx& x : candidate) x /= nrm;
  return candidate;
}

CVector random_unit_in_complement(std::size_t dim, std::span<const CVector> basis,
                                  GaussianSource& rng) {
  constexpr int kMaxAttempts = 8;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    CVector g(dim);
    for (cx& x : g) x = rng.gaussian_complex();
    const double nrm = norm2(g);
    if (nrm == 0.0) continue;
    for (cx& x : g) x /= nrm;
    try {
      return mgs_project_orthonormal(std::move(g), basis);
    } catch (const Error& e) {
      if (e.code() != errc::degenerate_candidate) throw;
    }
  }
  fail(errc::complement_exhausted,
       "no complement direction after 8 draws (basis size " + std::to_string(basis.size()) +
           " in dimension " + std::to_string(dim) + ")");
}

LuFactors lu_factor(CMatrix m) {
  if (m.rows() != m.cols()) fail(errc::dimension_mismatch, "lu_factor: matrix not square");
  const std::size_t n = m.rows();
  const double pivot_floor = kPivotFloorRel * frobenius(m);
  LuFactors f{std::move(m), std::vector<std::size_t>(n)};
  CMatrix& a = f.lu;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double cand = std::abs(a(i, k));
      if (cand > best) {
        best = cand;
        p = i;
      }
    }
    if (best <= pivot_floor)
      fail(errc::numerically_singular,
           "pivot " + std::to_string(best) + " at column " + std::to_string(k));
    f.perm[k] = p;
    if (p != k)
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
    const cx piv = a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) a(i, k) /= piv;
    for (std::size_t j = k + 1; j < n; ++j) {
      const cx akj = a(k, j);
      if (akj == 0.0) continue;
      for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= a(i, k) * akj;
    }
  }
  return f;
}

CVector lu_apply(const LuFactors& f, const CVector& b) {
  const std::size_t n = f.lu.rows();
  if (b.size() != n) fail(errc::dimension_mismatch, "lu_apply: rhs length");
  CVector x = b;
  for (std::size_t k = 0; k < n; ++k)
    if (f.perm[k] != k) std::swap(x[k], x[f.perm[k]]);
  for (std::size_t k = 0; k < n; ++k)  // L y = Pb, unit lower
    for (std::size_t i = k + 1; i < n; ++i) x[i] -= f.lu(i, k) * x[k];
  for (std::size_t k = n; k-- > 0;) {  // U x = y
    x[k] /= f.lu(k, k);
    for (std::size_t i = 0; i < k; ++i) x[i] -= f.lu(i, k) * x[k];
  }
  return x;
}

CMatrix lu_apply(const LuFactors& f, const CMatrix& b) {
  if (b.rows() != f.lu.rows()) fail(errc::dimension_mismatch, "lu_apply: rhs rows");
  CMatrix x(b.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) x.set_col(j, lu_apply(f, b.get_col(j)));
  return x;
}

CVector lu_solve(const CMatrix& m, const CVector& b) { return lu_apply(lu_factor(m), b); }

CMatrix lu_solve(const CMatrix& m, const CMatrix& b) { return lu_apply(lu_factor(m), b); }

double lu_min_pivot(CMatrix m) {
  if (m.rows() != m.cols()) fail(errc::dimension_mismatch, "lu_min_pivot: matrix not square");
  const std::size_t n = m.rows();
  double min_pivot = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(m(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double cand = std::abs(m(i, k));
      if (cand > best) {
        best = cand;
        p = i;
      }
    }
    min_pivot = std::min(min_pivot, best);
    if (best == 0.0) return 0.0;
    if (p != k)
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
    const cx piv = m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) m(i, k) /= piv;
    for (std::size_t j = k + 1; j < n; ++j) {
      const cx mkj = m(k, j);
      if (mkj == 0.0) continue;
      for (std::size_t i = k + 1; i < n; ++i) m(i, j) -= m(i, k) * mkj;
    }
  }
  return min_pivot;
}

}  // namespace rescurve
