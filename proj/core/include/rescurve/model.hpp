// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "rescurve/linalg.hpp"

namespace rescurve {

enum class CurveKind { decreasing, stagnating, zero_tail };

/// A prescribed cycle-convergence curve f(0)..f(q). Admissible shapes:
/// strictly decreasing (optionally hitting exactly 0 at the final entry),
/// or strictly decreasing down to f(s) > 0 and constant afterwards.
struct ConvergenceCurve {
  std::vector<double> values;  // f(0)..f(q)
  CurveKind kind = CurveKind::decreasing;
  int stagnation_index = -1;  // s, first index where equality begins

  int cycle_count() const { return static_cast<int>(values.size()) - 1; }  // q
  double f(int k) const { return values[static_cast<std::size_t>(k)]; }

  /// f(0) / smallest positive f(k) exceeds 1e12: reproduction checks must
  /// switch to per-cycle relative tolerances.
  bool wide_range() const;
};

/// Classify a raw value list or reject it. Equality is exact (bitwise):
/// nearly-equal entries are a decreasing curve, not stagnation.
ConvergenceCurve validate_curve(std::vector<double> values);

/// Per-cycle Krylov dimensions m_1..m_q for a system of order n.
struct RestartSchedule {
  std::vector<int> cycles;
  int order = 0;  // n

  int length() const { return static_cast<int>(cycles.size()); }  // q
  int at(int k) const { return cycles[static_cast<std::size_t>(k - 1)]; }  // 1-based
  int at_cyclic(int k) const {
    return cycles[static_cast<std::size_t>((k - 1) % length())];
  }
  int total() const;

  /// t = n - sum of the first `blocks` dimensions - 1; throws size_mismatch
  /// when negative.
  int completion_size(int blocks) const;
};

RestartSchedule validate_schedule(std::vector<int> cycles, int n);
RestartSchedule uniform_schedule(int m, int q, int n);

/// Prescribed eigenvalues, all bounded away from zero.
struct SpectrumSpec {
  std::vector<cx> eigenvalues;
  int order() const { return static_cast<int>(eigenvalues.size()); }
};

SpectrumSpec validate_spectrum(std::vector<cx> eigenvalues, int n);

/// p(x) = x^d - sum_{j<d} alpha_j x^j. The sign convention keeps the
/// companion-block columns literal: the stored alphas are what lands in
/// the operator matrix.
struct MonicPolynomial {
  std::vector<cx> alphas;  // alpha_0..alpha_{d-1}

  int degree() const { return static_cast<int>(alphas.size()); }
  cx alpha(int j) const { return alphas[static_cast<std::size_t>(j)]; }
  cx eval(cx x) const;
};

/// Coefficients by iterated multiplication of linear factors (Vieta).
MonicPolynomial poly_from_roots(std::span<const cx> roots);

enum class VariantKind { standard, stagnation, nonconvergent };

struct VariantConfig {
  VariantKind kind = VariantKind::standard;
  cx gamma{1.0, 0.0};  // used only by nonconvergent
};

VariantConfig validate_variant(VariantKind kind, cx gamma);

/// Split the eigenvalue list into `blocks`+1 consecutive runs: the k-th run
/// has the schedule's k-th dimension, the final run takes the rest.
std::vector<std::vector<cx>> partition_spectrum(const SpectrumSpec& spectrum,
                                                const RestartSchedule& schedule, int blocks);

}  // namespace rescurve
