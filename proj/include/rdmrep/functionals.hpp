// Copyright 2026 The rdmrep Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rdmrep/integrals.hpp"
#include "rdmrep/manybody.hpp"

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

namespace rdmrep {

/// Candidate point (W, gamma) of a density-matrix functional's graph.
struct FunctionalPoint {
  double w = 0.0;
  OneRDM gamma;
};

/// Named map gamma -> W. Implementations must be deterministic.
struct CandidateFunctional {
  std::string name;
  std::function<double(const OneRDM&, const SystemSpec&)> evaluate;

  double operator()(const OneRDM& gamma, const SystemSpec& spec) const { return evaluate(gamma, spec); }
};

/// Occupations within this distance of [0, 2] are clamped; beyond it they are an error.
inline constexpr double kOccupationClampTol = 1e-8;

/// Wedge-product 2-RDM in the natural-orbital basis:
/// G(pq, rs) = n_r n_s (d_pr d_qs - 1/2 d_qr d_ps).
TwoRDM hf_two_rdm(const Eigen::VectorXd& occupations);

/// Hartree-Fock interaction energy. gamma is diagonalized (ascending
/// eigenvalue order fixes degenerate natural orbitals) and the integrals are
/// rotated to that basis before contracting with hf_two_rdm.
double hf_vee(const OneRDM& gamma, const TwoBodyIntegrals& v);

struct TraceCondition {
  double value = 0.0;
  bool satisfied = false;
};

/// Pair-count test sum_rs G(rs, rs) == N(N-1) within 1e-8.
TraceCondition trace_condition(const TwoRDM& rdm, int n_electrons);

struct ColemanVerdict {
  bool pass = false;
  Eigen::VectorXd occupations;  ///< ascending
  Eigen::MatrixXd natural_orbitals;
  double trace = 0.0;
  std::vector<std::string> violations;
};

inline constexpr double kColemanTol = 1e-10;

/// Ensemble N-representability of a spin-summed 1-RDM: 0 <= gamma <= 2, tr gamma = N.
ColemanVerdict coleman_check(const OneRDM& gamma, int n_electrons, double tol = kColemanTol);

CandidateFunctional hartree_fock_functional();

/// Functional known only at tabulated points; evaluation away from a
/// tabulated gamma (Frobenius distance above match_tol) throws.
CandidateFunctional tabulated_functional(std::string name, std::vector<FunctionalPoint> table,
                                         double match_tol = 1e-8);

}  // namespace rdmrep
