// Copyright 2026 The rdmrep Authors
// SPDX-License-Identifier: Apache-2.0

/// Exact lower and upper bounds of the interaction functional at a fixed 1-RDM.
///
/// For lambda = +1 the constrained-search value min_{Gamma -> gamma} Tr[V Gamma]
/// equals sup_g D(g) with D(g) = E_0(g + lambda V) - Tr[g gamma]. For
/// lambda = -1 the same supremum gives minus the maximal interaction energy.
/// D is concave and nonsmooth at ground-state degeneracies, so it is
/// maximized through the free energy F_beta = -log(Tr exp(-beta H)) / beta,
/// whose gradient is the thermal 1-RDM, with beta annealed upward. Every
/// result carries a primal ensemble and the resulting duality gap.

#pragma once

#include "rdmrep/integrals.hpp"
#include "rdmrep/manybody.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

namespace rdmrep {

/// beta = 1, 2, 4, ..., 2^max_exponent.
std::vector<double> default_beta_schedule(int max_exponent = 32);

struct DualOptions {
  std::vector<double> beta_schedule = default_beta_schedule();
  double gap_tol = 1e-6;
  double residual_tol = 1e-6;
  double occupation_clamp = 1e-12;
  double gradient_tol = 1e-12;
  int max_newton_per_stage = 60;
  int max_eigensolves = 20000;
  int polyak_steps = 10;
  int certificate_iterations = 20000;
};

/// Parameter-space coefficients c with Tr[g gamma] = c . pack_symmetric(g).
Eigen::VectorXd trace_coefficients(const OneRDM& gamma);

struct DualValue {
  double value = 0.0;         ///< E_0(g + lambda V) - Tr[g gamma]
  double ground_energy = 0.0;
  OneRDM supergradient;       ///< equal-weight ground-space 1-RDM minus gamma
  GroundSpace ground;
};

DualValue dual_objective(const ModelSpace& space, const OneBodyOperator& g, double lambda, const OneRDM& gamma,
                         double degeneracy_tol = kDefaultDegeneracyTol);

/// Free energy of g + lambda V at inverse temperature beta and its
/// derivatives with respect to the packed potential parameters.
struct FreeEnergy {
  double value = 0.0;
  double ground_energy = 0.0;
  Eigen::VectorXd gradient;  ///< thermal expectations <A_k>
  Eigen::MatrixXd hessian;   ///< empty unless requested
  Ensemble thermal;          ///< empty unless requested
};

FreeEnergy free_energy(const ModelSpace& space, const Eigen::VectorXd& potential, double lambda, double beta,
                       bool with_hessian = false, bool with_ensemble = false);

struct Certificate {
  Ensemble ensemble;
  double primal_value = 0.0;  ///< lambda * <V_ee> of the ensemble
  double residual = 0.0;      ///< Frobenius norm of gamma(ensemble) - gamma
  std::size_t degeneracy = 0;
};

/// Searches the (near-)ground space of g_star + lambda V for the density
/// matrix whose 1-RDM is closest to gamma, by projected gradient over
/// {rho >= 0, tr rho = 1}. States within `window` (absolute energy) of the
/// ground energy are included; a negative window selects the default
/// degeneracy tolerance. With warm_beta > 0 the search starts from the
/// Boltzmann weights at that inverse temperature instead of equal weights.
Certificate primal_certificate(const ModelSpace& space, const OneBodyOperator& g_star, double lambda,
                               const OneRDM& gamma, const DualOptions& opts = {}, double window = -1.0,
                               double warm_beta = 0.0);

struct BoundResult {
  double value = 0.0;
  OneBodyOperator optimal_potential;
  double duality_gap = 0.0;
  Ensemble primal_ensemble;
  double residual = 0.0;
  double primal_value = 0.0;  ///< same sign convention as value
  int iterations = 0;
  int eigensolves = 0;
  bool converged = false;
  OneRDM target;  ///< gamma after boundary clamping
};

/// sup_g D(g) for lambda = +1 or -1; `value` is the dual optimum itself.
BoundResult maximize_dual(const ModelSpace& space, double lambda, const OneRDM& gamma, const DualOptions& opts = {});

/// Minimal interaction energy over ensembles with 1-RDM gamma.
BoundResult lower_bound(const ModelSpace& space, const OneRDM& gamma, const DualOptions& opts = {});
/// Maximal interaction energy over ensembles with 1-RDM gamma.
BoundResult upper_bound(const ModelSpace& space, const OneRDM& gamma, const DualOptions& opts = {});

/// Trace-preserving shrink of gamma toward (N/M) I so that all occupations
/// lie in [eps, 2 - eps].
OneRDM clamp_to_interior(const OneRDM& gamma, int n_electrons, double eps);

struct OracleResult {
  double value = 0.0;     ///< min over restarts of lambda * Tr[V Gamma]
  double residual = 0.0;  ///< constraint residual of the reported optimum
  bool feasible = false;
  int restarts = 0;
};

/// Brute-force constrained search over N-electron density matrices
/// Gamma = L L^T / tr(L L^T) with an augmented Lagrangian on gamma(Gamma) = gamma.
/// Limited to full spaces of dimension <= 64.
OracleResult primal_oracle(const ModelSpace& space, const OneRDM& gamma, double lambda, int restarts = 50,
                           std::uint64_t seed = 0);

}  // namespace rdmrep
