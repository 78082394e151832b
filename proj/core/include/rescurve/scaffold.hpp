// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "rescurve/model.hpp"

namespace rescurve {

/// Output of the first construction step: residual vectors with the
/// prescribed norms, per-cycle orthonormal sets, and the ordered linearly
/// independent set that later becomes the leading basis columns.
struct KrylovScaffold {
  std::vector<CVector> residuals;           // r_0..r_q
  std::vector<std::vector<CVector>> wsets;  // per built cycle: w_1..w_{m_k}
  std::vector<double> cosines;              // cos(psi_k) per built cycle
  std::vector<double> angles;               // psi_k in radians
  std::vector<CVector> sbar;                // independent set, tail slot last
  CVector tailvector;                       // the vector in the final slot
  std::vector<CVector> ortho;               // orthonormal basis of span(sbar)
  int built_blocks = 0;                     // q, or s+1 for stagnation

  int dim() const { return static_cast<int>(residuals.front().size()); }
};

/// Strictly decreasing curve: one cycle at a time, each residual rotated
/// toward a fresh complement direction so that its norm lands on f(k).
KrylovScaffold build_scaffold(const ConvergenceCurve& curve, const RestartSchedule& schedule,
                              const CVector& r0, GaussianSource& rng);

/// Decreasing prefix through cycle s, then a full orthonormal set chosen
/// orthogonal to r_s, which pins r_{s+1} = r_s; the final independent-set
/// slot holds w_m + r_s.
KrylovScaffold build_scaffold_stagnation(const ConvergenceCurve& curve,
                                         const RestartSchedule& schedule, const CVector& r0,
                                         GaussianSource& rng);

/// f(q) = 0: the last cycle aligns w_m with r_{q-1} so the residual
/// vanishes, and a fresh complement unit vector takes the final slot.
KrylovScaffold build_scaffold_zerotail(const ConvergenceCurve& curve,
                                       const RestartSchedule& schedule, const CVector& r0,
                                       GaussianSource& rng);

/// Replace the tail slot with r_q + gamma * r_{q-1} (the non-convergent
/// basis modification). Requires a plain decreasing scaffold.
void apply_nonconvergent_tail(KrylovScaffold& scaffold, cx gamma);

/// Smallest LU pivot of the Gram matrix of the column-normalized
/// independent set; the numerical-independence proxy.
double sbar_independence_pivot(const KrylovScaffold& scaffold);

}  // namespace rescurve
