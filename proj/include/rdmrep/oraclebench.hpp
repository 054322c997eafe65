// Copyright 2026 The rdmrep Authors
// SPDX-License-Identifier: Apache-2.0

/// Brute-force extremes of <V_ee> over two-electron, two-orbital ensembles
/// whose 1-RDM is diag(n, 2 - n).
///
/// Pure singlets are c1|1a1b> + c2|2a2b> + c3 S with S the open-shell
/// singlet; the triplet manifold contributes one point at n = 1. A singlet
/// and its c3 -> -c3 reflection have opposite off-diagonal 1-RDM entries, so
/// their equal mixture is diagonal with occupation 2 c1^2 + c3^2. Ensemble
/// extremes are read off the convex envelopes of these points in the (n, W)
/// plane. The reflected mixtures cover every diagonal ensemble when the
/// integrals are invariant under phi_2 -> -phi_2, which holds for both
/// bundled models.

#pragma once

#include "rdmrep/integrals.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace rdmrep {

struct ExtremeState {
  std::string family;        ///< "ionic", "open-shell-singlet", "singlet-pair" or "triplet"
  Eigen::Vector3d coefficients = Eigen::Vector3d::Zero();  ///< (c1, c2, c3); zero for the triplet
  double occupation = 0.0;
  double w = 0.0;
  double weight = 0.0;  ///< ensemble weight of this component
};

struct ExtremeSearchResult {
  double min_value = 0.0;
  double max_value = 0.0;
  std::vector<ExtremeState> min_attainers;
  std::vector<ExtremeState> max_attainers;
};

inline constexpr int kMinOracleGrid = 100;

/// `occupation` is n in diag(n, 2 - n). Throws DimensionError unless
/// M = 2 and N = 2, and std::invalid_argument for grid < kMinOracleGrid or
/// n outside [0, 2].
ExtremeSearchResult enumerate_extremes(double occupation, const SystemSpec& spec, int grid = 200);

}  // namespace rdmrep
