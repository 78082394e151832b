// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <vector>

#include "rescurve/model.hpp"

namespace rescurve {

struct GmresOptions {
  double abstol_rel = 1e-14;     // stop when ||r|| <= abstol_rel * ||b||
  double breakdown_rel = 1e-13;  // happy breakdown when h_{j+1,j} <= breakdown_rel * ||A||_F
};

/// Arnoldi relation A V_s = V_{s+1} H for the Krylov space of (A, r).
/// `steps` is s; on happy breakdown V has only s columns and the dropped
/// subdiagonal entry of H is zero.
struct ArnoldiDecomposition {
  std::vector<CVector> V;  // steps (+1 when no breakdown) orthonormal columns
  CMatrix H;               // (steps+1) x steps upper Hessenberg
  int steps = 0;
  bool breakdown = false;
};

ArnoldiDecomposition arnoldi(const CMatrix& A, const CVector& r, int m,
                             const GmresOptions& opts = {});

/// One restart span. inner_norms[j-1] is the residual norm after inner step
/// j from the Givens recurrence; end_norm is the explicitly recomputed
/// ||b - A x'|| and is the value reports should trust.
struct CycleRecord {
  std::vector<double> inner_norms;
  CVector end_residual;
  double end_norm = 0.0;
  int steps = 0;
  bool breakdown = false;
};

std::pair<CVector, CycleRecord> gmres_cycle(const CMatrix& A, const CVector& x, const CVector& b,
                                            int m, const GmresOptions& opts = {});

struct ConvergenceHistory {
  std::vector<CycleRecord> cycles;
  CVector x_final;
  bool stopped_early = false;  // residual hit the absolute tolerance
  int stop_cycle = -1;         // last cycle executed when stopped early

  double end_norm(int k) const { return cycles[static_cast<std::size_t>(k - 1)].end_norm; }
};

/// Chain gmres_cycle for `cycles` spans, taking per-cycle dimensions from
/// the schedule (extended cyclically past its length).
ConvergenceHistory restarted_gmres(const CMatrix& A, const CVector& b, const CVector& x0,
                                   const RestartSchedule& schedule, int cycles,
                                   const GmresOptions& opts = {});

}  // namespace rescurve
