// SPDX-License-Identifier: Apache-2.0

#include "rescurve/scaffold.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace rescurve {

namespace {

constexpr double kIndependencePivotFloor = 1e-8;

void check_preconditions(const ConvergenceCurve& curve, const RestartSchedule& schedule,
                         const CVector& r0) {
  if (static_cast<int>(r0.size()) != schedule.order)
    fail(errc::dimension_mismatch, "r0 length differs from schedule order");
  if (schedule.length() != curve.cycle_count())
    fail(errc::size_mismatch, "schedule has " + std::to_string(schedule.length()) +
                                  " cycles, curve prescribes " +
                                  std::to_string(curve.cycle_count()));
  const double r0_norm = norm2(r0);
  if (std::abs(r0_norm - curve.f(0)) > 1e-12 * curve.f(0))
    fail(errc::non_admissible, "||r0|| = " + std::to_string(r0_norm) +
                                   " does not match f(0) = " + std::to_string(curve.f(0)));
}

struct Builder {
  const ConvergenceCurve& curve;
  const RestartSchedule& schedule;
  GaussianSource& rng;
  KrylovScaffold out;

  Builder(const ConvergenceCurve& c, const RestartSchedule& s, const CVector& r0,
          GaussianSource& g)
      : curve(c), schedule(s), rng(g) {
    out.residuals.push_back(r0);
    out.sbar.push_back(r0);
    out.ortho.push_back(scaled(r0, 1.0 / norm2(r0)));
  }

  std::size_t dim() const { return out.residuals.front().size(); }

  CVector draw_fresh() { return random_unit_in_complement(dim(), out.ortho, rng); }

  /// One cycle of the inductive construction: m_k - 1 fresh orthonormal
  /// vectors (all orthogonal to r_{k-1}), then the rotated direction
  ///   w_m = cos(psi) r_{k-1}/f(k-1) + sin(psi) y
  /// and the residual update r_k = r_{k-1} - <w_m, r_{k-1}> w_m.
  void decreasing_cycle(int k) {
    const int m = schedule.at(k);
    const CVector& r_prev = out.residuals.back();
    std::vector<CVector> wset;
    wset.reserve(static_cast<std::size_t>(m));
    for (int j = 1; j <= m - 1; ++j) {
      CVector w = draw_fresh();
      wset.push_back(w);
      out.sbar.push_back(w);
      out.ortho.push_back(std::move(w));
    }
    const double f_prev = curve.f(k - 1);
    const double f_next = curve.f(k);
    const double cos_psi = std::sqrt(f_prev * f_prev - f_next * f_next) / f_prev;
    const double sin_psi = f_next / f_prev;

    CVector y = draw_fresh();
    CVector w_m = scaled(r_prev, cos_psi / f_prev);
    axpy(sin_psi, y, w_m);
    const cx coeff = inner(w_m, r_prev);  // the component of r_{k-1} along w_m
    CVector r_next = r_prev;
    axpy(-coeff, w_m, r_next);

    wset.push_back(std::move(w_m));
    out.wsets.push_back(std::move(wset));
    out.cosines.push_back(cos_psi);
    out.angles.push_back(std::acos(cos_psi));
    out.ortho.push_back(std::move(y));
    out.residuals.push_back(r_next);
    out.sbar.push_back(std::move(r_next));
  }

  /// The tail slot must already sit at the back of sbar.
  void finish(int built_blocks) {
    out.tailvector = out.sbar.back();
    out.built_blocks = built_blocks;
    const double pivot = sbar_independence_pivot(out);
    if (pivot < kIndependencePivotFloor)
      fail(errc::numerically_singular,
           "independent set degenerate: normalized Gram pivot " + std::to_string(pivot));
  }
};

}  // namespace

KrylovScaffold build_scaffold(const ConvergenceCurve& curve, const RestartSchedule& schedule,
                              const CVector& r0, GaussianSource& rng) {
  check_preconditions(curve, schedule, r0);
  if (curve.kind != CurveKind::decreasing)
    fail(errc::curve_not_decreasing, "plain scaffold requires a strictly decreasing curve");
  Builder b(curve, schedule, r0, rng);
  const int q = curve.cycle_count();
  for (int k = 1; k <= q; ++k) b.decreasing_cycle(k);
  b.finish(q);
  return std::move(b.out);
}

KrylovScaffold build_scaffold_stagnation(const ConvergenceCurve& curve,
                                         const RestartSchedule& schedule, const CVector& r0,
                                         GaussianSource& rng) {
  check_preconditions(curve, schedule, r0);
  if (curve.kind != CurveKind::stagnating)
    fail(errc::non_admissible, "stagnation scaffold requires a stagnating curve");
  Builder b(curve, schedule, r0, rng);
  const int s = curve.stagnation_index;
  for (int k = 1; k <= s; ++k) b.decreasing_cycle(k);

  // Cycle s+1: the whole orthonormal set lives in the complement of
  // everything built so far, hence is orthogonal to r_s and the cycle
  // cannot reduce the residual.
  const int m = schedule.at(s + 1);
  const CVector r_s = b.out.residuals.back();
  std::vector<CVector> wset;
  wset.reserve(static_cast<std::size_t>(m));
  for (int j = 1; j <= m; ++j) {
    CVector w = b.draw_fresh();
    wset.push_back(w);
    if (j <= m - 1) b.out.sbar.push_back(w);
    b.out.ortho.push_back(std::move(w));
  }
  CVector tail = wset.back();
  axpy(1.0, r_s, tail);

  b.out.wsets.push_back(std::move(wset));
  b.out.cosines.push_back(0.0);
  b.out.angles.push_back(std::acos(0.0));
  // Residuals stay put from cycle s+1 on.
  const int q = curve.cycle_count();
  for (int k = s + 1; k <= q; ++k) b.out.residuals.push_back(r_s);
  b.out.sbar.push_back(std::move(tail));
  b.finish(s + 1);
  return std::move(b.out);
}

KrylovScaffold build_scaffold_zerotail(const ConvergenceCurve& curve,
                                       const RestartSchedule& schedule, const CVector& r0,
                                       GaussianSource& rng) {
  check_preconditions(curve, schedule, r0);
  if (curve.kind != CurveKind::zero_tail)
    fail(errc::non_admissible, "zero-tail scaffold requires f(q) = 0");
  Builder b(curve, schedule, r0, rng);
  const int q = curve.cycle_count();
  for (int k = 1; k <= q - 1; ++k) b.decreasing_cycle(k);

  // Last cycle: cos(psi_q) = 1, so w_m is r_{q-1} itself normalized and the
  // residual vanishes exactly.
  const int m = schedule.at(q);
  const CVector& r_prev = b.out.residuals.back();
  std::vector<CVector> wset;
  wset.reserve(static_cast<std::size_t>(m));
  for (int j = 1; j <= m - 1; ++j) {
    CVector w = b.draw_fresh();
    wset.push_back(w);
    b.out.sbar.push_back(w);
    b.out.ortho.push_back(std::move(w));
  }
  wset.push_back(scaled(r_prev, 1.0 / curve.f(q - 1)));
  b.out.wsets.push_back(std::move(wset));
  b.out.cosines.push_back(1.0);
  b.out.angles.push_back(0.0);
  b.out.residuals.push_back(CVector(b.dim(), 0.0));

  // r_q = 0 cannot occupy a basis slot; a fresh complement unit vector does.
  CVector z = b.draw_fresh();
  b.out.ortho.push_back(z);
  b.out.sbar.push_back(std::move(z));
  b.finish(q);
  return std::move(b.out);
}

void apply_nonconvergent_tail(KrylovScaffold& scaffold, cx gamma) {
  const std::size_t q = scaffold.residuals.size() - 1;
  if (q < 1) fail(errc::size_mismatch, "non-convergent tail needs at least one cycle");
  CVector tail = scaffold.residuals[q];
  axpy(gamma, scaffold.residuals[q - 1], tail);
  scaffold.tailvector = tail;
  scaffold.sbar.back() = std::move(tail);
  const double pivot = sbar_independence_pivot(scaffold);
  if (pivot < kIndependencePivotFloor)
    fail(errc::numerically_singular,
         "modified tail degenerate: normalized Gram pivot " + std::to_string(pivot));
}

double sbar_independence_pivot(const KrylovScaffold& scaffold) {
  const std::size_t count = scaffold.sbar.size();
  std::vector<CVector> normalized;
  normalized.reserve(count);
  for (const CVector& v : scaffold.sbar) normalized.push_back(scaled(v, 1.0 / norm2(v)));
  CMatrix gram(count, count);
  for (std::size_t j = 0; j < count; ++j)
    for (std::size_t i = 0; i < count; ++i) gram(i, j) = inner(normalized[i], normalized[j]);
  return lu_min_pivot(std::move(gram));
}

}  // namespace rescurve
