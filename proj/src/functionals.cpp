// Copyright 2026 The rdmrep Authors
// SPDX-License-Identifier: Apache-2.0

#include "rdmrep/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <stdexcept>

namespace rdmrep {

namespace {

std::string format_value(const char* what, double value) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%s %.12g", what, value);
  return buf;
}

}  // namespace

TwoRDM hf_two_rdm(const Eigen::VectorXd& n) {
  const auto m = static_cast<int>(n.size());
  for (int r = 0; r < m; ++r) {
    if (n(r) < 0.0 || n(r) > 2.0) throw std::invalid_argument(format_value("occupation out of [0, 2]:", n(r)));
  }
  TwoRDM out{m, Eigen::MatrixXd::Zero(m * m, m * m)};
  // Nonzero only for (p,q) = (r,s) or (p,q) = (s,r).
  for (int r = 0; r < m; ++r)
    for (int s = 0; s < m; ++s) {
      out.matrix(r * m + s, r * m + s) += n(r) * n(s);
      out.matrix(s * m + r, r * m + s) -= 0.5 * n(r) * n(s);
    }
  return out;
}

double hf_vee(const OneRDM& gamma, const TwoBodyIntegrals& v) {
  const int m = gamma.m_spatial();
  if (v.m_spatial() != m) throw DimensionError("1-RDM and integrals disagree on orbital count");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gamma.matrix());
  Eigen::VectorXd n = solver.eigenvalues();
  for (int r = 0; r < m; ++r) {
    if (n(r) < -kOccupationClampTol || n(r) > 2.0 + kOccupationClampTol) {
      throw std::invalid_argument(format_value("natural occupation out of [0, 2]:", n(r)));
    }
    n(r) = std::clamp(n(r), 0.0, 2.0);
  }
  const TwoBodyIntegrals natural = rotate(v, solver.eigenvectors());
  double w = 0.0;
  for (int r = 0; r < m; ++r)
    for (int s = 0; s < m; ++s) w += n(r) * n(s) * (natural(r, r, s, s) - 0.5 * natural(r, s, s, r));
  return 0.5 * w;
}

TraceCondition trace_condition(const TwoRDM& rdm, int n_electrons) {
  const double value = rdm.trace();
  const double pairs = static_cast<double>(n_electrons) * (n_electrons - 1);
  return {value, std::abs(value - pairs) <= 1e-8};
}

ColemanVerdict coleman_check(const OneRDM& gamma, int n_electrons, double tol) {
  ColemanVerdict verdict;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gamma.matrix());
  verdict.occupations = solver.eigenvalues();
  verdict.natural_orbitals = solver.eigenvectors();
  verdict.trace = gamma.trace();
  for (Eigen::Index i = 0; i < verdict.occupations.size(); ++i) {
    const double n = verdict.occupations(i);
    if (n < -tol) verdict.violations.push_back(format_value("occupation below 0:", n));
    if (n > 2.0 + tol) verdict.violations.push_back(format_value("occupation above 2:", n));
  }
  if (std::abs(verdict.trace - n_electrons) > tol) {
    verdict.violations.push_back(format_value("trace differs from N:", verdict.trace));
  }
  verdict.pass = verdict.violations.empty();
  return verdict;
}

CandidateFunctional hartree_fock_functional() {
  return {"hf", [](const OneRDM& gamma, const SystemSpec& spec) { return hf_vee(gamma, spec.v); }};
}

CandidateFunctional tabulated_functional(std::string name, std::vector<FunctionalPoint> table, double match_tol) {
  auto shared = std::make_shared<const std::vector<FunctionalPoint>>(std::move(table));
  return {std::move(name), [shared, match_tol](const OneRDM& gamma, const SystemSpec&) {
            for (const auto& entry : *shared) {
              if (entry.gamma.m_spatial() == gamma.m_spatial() &&
                  (entry.gamma.matrix() - gamma.matrix()).norm() <= match_tol) {
                return entry.w;
              }
            }
            throw std::out_of_range("functional is not tabulated at the requested 1-RDM");
          }};
}

}  // namespace rdmrep
