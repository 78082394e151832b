// SPDX-License-Identifier: Apache-2.0

#include "rescurve/construct.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace rescurve {

namespace {

constexpr double kSimilarityResidualTol = 1e-10;

}  // namespace

OperatorAssembly assemble_operator(const KrylovScaffold& scaffold,
                                   const std::vector<std::vector<cx>>& partition,
                                   const VariantConfig& variant, bool zero_tail,
                                   GaussianSource& rng) {
  const std::size_t n = static_cast<std::size_t>(scaffold.dim());
  const int blocks = scaffold.built_blocks;
  if (static_cast<int>(partition.size()) != blocks + 1)
    fail(errc::size_mismatch, "partition has " + std::to_string(partition.size()) +
                                  " subsets, scaffold built " + std::to_string(blocks) +
                                  " blocks");

  OperatorAssembly a;
  a.variant = variant;
  a.zero_tail = zero_tail;
  a.block_polys.reserve(partition.size());
  a.block_sizes.reserve(partition.size());
  std::size_t total = 0;
  for (const auto& part : partition) {
    a.block_polys.push_back(poly_from_roots(part));
    a.block_sizes.push_back(static_cast<int>(part.size()));
    total += part.size();
  }
  if (total != n) fail(errc::size_mismatch, "partition does not cover the full order");
  a.completion_size = a.block_sizes.back() - 1;

  // Expected leading columns: one block of {r_{k-1}, w_1..w_{m_k-1}} per
  // cycle, then the tail slot.
  std::size_t leading = 1;
  for (int k = 0; k < blocks; ++k) leading += static_cast<std::size_t>(a.block_sizes[k]);
  if (scaffold.sbar.size() != leading)
    fail(errc::size_mismatch, "independent set size does not match the partition");

  // Couplings: -alpha_0^(k) on each block boundary; the last one is scaled
  // by 1/(1+gamma) in the non-convergent variant and absent for a zero tail.
  a.couplings.resize(static_cast<std::size_t>(blocks));
  for (int k = 0; k < blocks; ++k) a.couplings[static_cast<std::size_t>(k)] = -a.block_polys[static_cast<std::size_t>(k)].alpha(0);
  if (variant.kind == VariantKind::nonconvergent) {
    if (std::abs(variant.gamma + 1.0) <= 1e-12)
      fail(errc::gamma_forbidden, "gamma must differ from -1");
    a.couplings.back() = -a.block_polys[static_cast<std::size_t>(blocks - 1)].alpha(0) /
                         (1.0 + variant.gamma);
  }
  if (zero_tail) a.couplings.back() = 0.0;

  // Complete the basis with orthonormal vectors from the complement.
  a.basis = CMatrix(n, n);
  for (std::size_t j = 0; j < scaffold.sbar.size(); ++j) a.basis.set_col(j, scaffold.sbar[j]);
  std::vector<CVector> ortho = scaffold.ortho;
  for (int i = 0; i < a.completion_size; ++i) {
    CVector s_hat = random_unit_in_complement(n, ortho, rng);
    a.basis.set_col(leading + static_cast<std::size_t>(i), s_hat);
    ortho.push_back(std::move(s_hat));
  }

  // Write [A]_S column by column from the operator's action on the basis.
  a.op_in_basis = CMatrix(n, n);
  CMatrix& op = a.op_in_basis;
  std::size_t offset = 0;
  for (int k = 0; k <= blocks; ++k) {
    const std::size_t size = static_cast<std::size_t>(a.block_sizes[static_cast<std::size_t>(k)]);
    const MonicPolynomial& p = a.block_polys[static_cast<std::size_t>(k)];
    for (std::size_t c = 0; c + 1 < size; ++c) op(offset + c + 1, offset + c) = 1.0;
    const std::size_t last = offset + size - 1;
    for (std::size_t j = 0; j < size; ++j) op(offset + j, last) = p.alpha(static_cast<int>(j));
    if (k < blocks) op(offset + size, last) = a.couplings[static_cast<std::size_t>(k)];
    offset += size;
  }
  return a;
}

CMatrix similarity_transform(const OperatorAssembly& assembly) {
  const CMatrix product = matmul(assembly.basis, assembly.op_in_basis);  // S [A]_S
  // Solve A S = S [A]_S through the transposed system S^T A^T = (S [A]_S)^T.
  const CMatrix a = transpose(lu_solve(transpose(assembly.basis), transpose(product)));
  const double residual = [&] {
    CMatrix diff = matmul(a, assembly.basis);
    for (std::size_t i = 0; i < diff.data().size(); ++i) diff.data()[i] -= product.data()[i];
    return frobenius(diff);
  }();
  const double scale = frobenius(a) * frobenius(assembly.basis);
  if (residual > kSimilarityResidualTol * scale)
    fail(errc::numerically_singular,
         "similarity residual " + std::to_string(residual / scale) + " above tolerance");
  return a;
}

ConstructedProblem construct_problem(const ConvergenceCurve& curve,
                                     const RestartSchedule& schedule,
                                     const SpectrumSpec& spectrum, const VariantConfig& variant,
                                     std::uint64_t seed, R0Mode r0_mode) {
  if (spectrum.order() != schedule.order)
    fail(errc::size_mismatch, "spectrum and schedule disagree on the order");
  switch (variant.kind) {
    case VariantKind::standard:
      break;  // decreasing or zero-tail curves
    case VariantKind::stagnation:
      if (curve.kind != CurveKind::stagnating)
        fail(errc::non_admissible, "stagnation variant requires a stagnating curve");
      break;
    case VariantKind::nonconvergent:
      if (curve.kind != CurveKind::decreasing)
        fail(errc::non_admissible,
             "non-convergent variant requires a strictly decreasing positive curve");
      break;
  }
  if (curve.kind == CurveKind::stagnating && variant.kind != VariantKind::stagnation)
    fail(errc::non_admissible, "stagnating curve requires the stagnation variant");

  const std::size_t n = static_cast<std::size_t>(schedule.order);
  GaussianSource rng(seed);

  CVector r0(n, 0.0);
  if (r0_mode == R0Mode::first_canonical) {
    r0[0] = curve.f(0);
  } else {
    for (cx& x : r0) x = rng.gaussian_complex();
    const double nrm = norm2(r0);
    for (cx& x : r0) x *= curve.f(0) / nrm;
  }

  ConstructedProblem problem;
  switch (curve.kind) {
    case CurveKind::decreasing:
      problem.scaffold = build_scaffold(curve, schedule, r0, rng);
      if (variant.kind == VariantKind::nonconvergent)
        apply_nonconvergent_tail(problem.scaffold, variant.gamma);
      break;
    case CurveKind::stagnating:
      problem.scaffold = build_scaffold_stagnation(curve, schedule, r0, rng);
      break;
    case CurveKind::zero_tail:
      problem.scaffold = build_scaffold_zerotail(curve, schedule, r0, rng);
      break;
  }

  const auto partition = partition_spectrum(spectrum, schedule, problem.scaffold.built_blocks);
  problem.assembly = assemble_operator(problem.scaffold, partition, variant,
                                       curve.kind == CurveKind::zero_tail, rng);
  problem.A = similarity_transform(problem.assembly);
  problem.b = r0;
  problem.x0 = CVector(n, 0.0);
  problem.r0 = std::move(r0);
  problem.curve = curve;
  problem.schedule = schedule;
  problem.spectrum = spectrum;
  problem.variant = variant;
  problem.seed = seed;
  problem.r0_mode = r0_mode;
  return problem;
}

}  // namespace rescurve
