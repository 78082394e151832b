// SPDX-License-Identifier: Apache-2.0

#include "rescurve/gmres.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace rescurve {

namespace {

struct Givens {
  double c = 1.0;
  cx s = 0.0;
};

/// Rotation with [c, s; -conj(s), c] [a; b] = [r; 0], c real.
Givens make_givens(cx a, cx b, cx& r) {
  Givens g;
  if (b == 0.0) {
    g.c = 1.0;
    g.s = 0.0;
    r = a;
  } else if (a == 0.0) {
    g.c = 0.0;
    g.s = std::conj(b) / std::abs(b);
    r = std::abs(b);
  } else {
    const double na = std::abs(a);
    const double scale = std::hypot(na, std::abs(b));
    const cx phase = a / na;
    g.c = na / scale;
    g.s = phase * std::conj(b) / scale;
    r = phase * scale;
  }
  return g;
}

void apply_givens(const Givens& g, cx& top, cx& bottom) {
  const cx t = g.c * top + g.s * bottom;
  bottom = -std::conj(g.s) * top + g.c * bottom;
  top = t;
}

}  // namespace

ArnoldiDecomposition arnoldi(const CMatrix& A, const CVector& r, int m,
                             const GmresOptions& opts) {
  if (A.rows() != A.cols() || A.rows() != r.size())
    fail(errc::dimension_mismatch, "arnoldi: shapes disagree");
  const double beta = norm2(r);
  if (beta == 0.0) fail(errc::zero_residual, "arnoldi started from the zero vector");
  const double breakdown_tol = opts.breakdown_rel * frobenius(A);
  const std::size_t depth = static_cast<std::size_t>(m);

  ArnoldiDecomposition out;
  out.V.push_back(scaled(r, 1.0 / beta));
  CMatrix h(depth + 1, depth);
  std::size_t j = 0;
  for (; j < depth; ++j) {
    CVector w = matvec(A, out.V[j]);
    // Modified Gram-Schmidt with one reorthogonalization pass; the
    // correction folds into the same Hessenberg column.
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i <= j; ++i) {
        const cx c = inner(out.V[i], w);
        axpy(-c, out.V[i], w);
        h(i, j) += c;
      }
    }
    const double hnext = norm2(w);
    if (hnext <= breakdown_tol) {
      out.breakdown = true;
      h(j + 1, j) = 0.0;
      ++j;
      break;
    }
    h(j + 1, j) = hnext;
    out.V.push_back(scaled(w, 1.0 / hnext));
  }
  out.steps = static_cast<int>(j);
  CMatrix trimmed(j + 1, j);
  for (std::size_t col = 0; col < j; ++col)
    for (std::size_t row = 0; row <= j; ++row) trimmed(row, col) = h(row, col);
  out.H = std::move(trimmed);
  return out;
}

std::pair<CVector, CycleRecord> gmres_cycle(const CMatrix& A, const CVector& x, const CVector& b,
                                            int m, const GmresOptions& opts) {
  if (m < 1) fail(errc::non_admissible, "restart dimension must be at least 1");
  CVector r = b;
  axpy(-1.0, matvec(A, x), r);
  const double beta = norm2(r);
  ArnoldiDecomposition dec = arnoldi(A, r, m, opts);  // throws zero_residual when beta == 0
  const std::size_t s = static_cast<std::size_t>(dec.steps);

  // Progressive Givens reduction of H with rhs beta*e_1; |g_{j+1}| after
  // rotation j is the residual norm of the j-step least-squares problem.
  CMatrix& h = dec.H;
  CVector g(s + 1, 0.0);
  g[0] = beta;
  std::vector<Givens> rotations;
  rotations.reserve(s);
  CycleRecord rec;
  rec.steps = dec.steps;
  rec.breakdown = dec.breakdown;
  for (std::size_t j = 0; j < s; ++j) {
    for (std::size_t i = 0; i < j; ++i) apply_givens(rotations[i], h(i, j), h(i + 1, j));
    cx diag;
    const Givens rot = make_givens(h(j, j), h(j + 1, j), diag);
    h(j, j) = diag;
    h(j + 1, j) = 0.0;
    apply_givens(rot, g[j], g[j + 1]);
    rotations.push_back(rot);
    rec.inner_norms.push_back(std::abs(g[j + 1]));
  }

  // Back substitution on the triangularized system.
  CVector y(s, 0.0);
  for (std::size_t i = s; i-- > 0;) {
    cx acc = g[i];
    for (std::size_t k = i + 1; k < s; ++k) acc -= h(i, k) * y[k];
    y[i] = acc / h(i, i);
  }

  CVector x_next = x;
  for (std::size_t i = 0; i < s; ++i) axpy(y[i], dec.V[i], x_next);

  rec.end_residual = b;
  axpy(-1.0, matvec(A, x_next), rec.end_residual);
  rec.end_norm = norm2(rec.end_residual);
  return {std::move(x_next), std::move(rec)};
}

ConvergenceHistory restarted_gmres(const CMatrix& A, const CVector& b, const CVector& x0,
                                   const RestartSchedule& schedule, int cycles,
                                   const GmresOptions& opts) {
  ConvergenceHistory hist;
  CVector x = x0;
  const double abstol = opts.abstol_rel * norm2(b);
  CVector r = b;
  axpy(-1.0, matvec(A, x), r);
  double rnorm = norm2(r);
  for (int k = 1; k <= cycles; ++k) {
    if (rnorm <= abstol) {
      hist.stopped_early = true;
      hist.stop_cycle = k - 1;
      break;
    }
    auto [x_next, rec] = gmres_cycle(A, x, b, schedule.at_cyclic(k), opts);
    x = std::move(x_next);
    rnorm = rec.end_norm;
    hist.cycles.push_back(std::move(rec));
    if (rnorm <= abstol) {
      hist.stopped_early = true;
      hist.stop_cycle = k;
      break;
    }
  }
  hist.x_final = std::move(x);
  return hist;
}

}  // namespace rescurve
