// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "rescurve/model.hpp"
#include "rescurve/scaffold.hpp"

namespace rescurve {

/// Basis and block-triangular operator representation. The operator matrix
/// has one companion block per eigenvalue subset; the only entry below each
/// diagonal block is a single coupling in the block's last column.
struct OperatorAssembly {
  CMatrix basis;        // S: independent set columns, then the orthonormal completion
  CMatrix op_in_basis;  // [A]_S
  std::vector<MonicPolynomial> block_polys;  // p_1..p_B
  std::vector<int> block_sizes;              // m_1..m_{B-1}, t+1
  std::vector<cx> couplings;                 // boundary entries, block k -> k+1
  int completion_size = 0;                   // t
  VariantConfig variant;
  bool zero_tail = false;  // final coupling dropped (its residual factor is 0)

  int order() const { return static_cast<int>(basis.rows()); }
};

OperatorAssembly assemble_operator(const KrylovScaffold& scaffold,
                                   const std::vector<std::vector<cx>>& partition,
                                   const VariantConfig& variant, bool zero_tail,
                                   GaussianSource& rng);

/// A = S [A]_S S^{-1} via one LU factorization of S^T (no explicit inverse);
/// verifies ||A S - S [A]_S||_F <= 1e-10 ||A||_F ||S||_F before returning.
CMatrix similarity_transform(const OperatorAssembly& assembly);

enum class R0Mode { first_canonical, random_unit };

/// Everything the construction produces, with enough context to verify it.
struct ConstructedProblem {
  CMatrix A;
  CVector b;
  CVector x0;
  CVector r0;
  OperatorAssembly assembly;
  KrylovScaffold scaffold;
  ConvergenceCurve curve;
  RestartSchedule schedule;
  SpectrumSpec spectrum;
  VariantConfig variant;
  std::uint64_t seed = 0;
  R0Mode r0_mode = R0Mode::first_canonical;
};

/// The full pipeline: r0, variant-dispatched scaffold, spectrum partition,
/// operator assembly, similarity transform. x0 = 0 and b = r0.
ConstructedProblem construct_problem(const ConvergenceCurve& curve,
                                     const RestartSchedule& schedule,
                                     const SpectrumSpec& spectrum, const VariantConfig& variant,
                                     std::uint64_t seed,
                                     R0Mode r0_mode = R0Mode::first_canonical);

}  // namespace rescurve
