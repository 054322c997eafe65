// Copyright 2026 The rdmrep Authors
// SPDX-License-Identifier: Apache-2.0

// Shared test helpers: random draws and an independent Fock-space oracle.

#pragma once

#include "rdmrep/integrals.hpp"
#include "rdmrep/manybody.hpp"

#include <Eigen/Dense>

#include <bit>
#include <cstdint>
#include <random>
#include <vector>

namespace rdmrep::testing {

inline Eigen::MatrixXd random_symmetric(int m, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Eigen::MatrixXd a(m, m);
  for (int p = 0; p < m; ++p)
    for (int q = p; q < m; ++q) a(p, q) = a(q, p) = normal(rng);
  return a;
}

inline Eigen::MatrixXd random_orthogonal(int m, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd a(m, m);
  for (int i = 0; i < a.size(); ++i) a.data()[i] = normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  return qr.householderQ() * Eigen::MatrixXd::Identity(m, m);
}

/// Rotated diag(n, 2 - n) with n uniform in [lo, hi].
inline OneRDM random_two_orbital_gamma(std::mt19937_64& rng, double lo = 0.05, double hi = 1.95) {
  std::uniform_real_distribution<double> uni(lo, hi);
  const double n = uni(rng);
  const Eigen::MatrixXd u = random_orthogonal(2, rng);
  return OneRDM(Eigen::MatrixXd(u * Eigen::Vector2d(n, 2.0 - n).asDiagonal() * u.transpose()));
}

inline Eigen::VectorXd random_state(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = normal(rng);
  return v.normalized();
}

/// Random integrals with the full 8-fold symmetry and a PSD pair matrix.
inline TwoBodyIntegrals random_integrals(int m, std::mt19937_64& rng) {
  const int pairs = m * m;
  std::normal_distribution<double> normal;
  Eigen::MatrixXd b(pairs, pairs);
  for (int i = 0; i < b.size(); ++i) b.data()[i] = normal(rng);
  TwoBodyIntegrals v(m);
  // Symmetrize over the pair swap p <-> q so (pq|rs) = (qp|rs).
  auto sym_index = [m](int p, int q) { return p * m + q; };
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(pairs, pairs);
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q) {
      s.row(sym_index(p, q)) += 0.5 * b.row(sym_index(p, q));
      s.row(sym_index(p, q)) += 0.5 * b.row(sym_index(q, p));
    }
  const Eigen::MatrixXd g = s * s.transpose() / pairs;
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q)
      for (int r = 0; r < m; ++r)
        for (int t = 0; t < m; ++t) v.set(p, q, r, t, g(sym_index(p, q), sym_index(r, t)));
  return v;
}

/// Jordan-Wigner Fock space over 2M spin orbitals built from Kronecker
/// products of 2x2 matrices. Basis index bit i is the occupation of spin
/// orbital i.
class JordanWignerOracle {
 public:
  explicit JordanWignerOracle(int m_spatial) : n_(2 * m_spatial), dim_(Eigen::Index{1} << n_) {
    Eigen::Matrix2d lower;
    lower << 0, 1, 0, 0;
    const Eigen::Matrix2d z = Eigen::Vector2d(1, -1).asDiagonal();
    for (int i = 0; i < n_; ++i) {
      Eigen::MatrixXd op = Eigen::MatrixXd::Identity(1, 1);
      // Highest spin orbital is the leftmost Kronecker factor.
      for (int j = n_ - 1; j >= 0; --j) {
        const Eigen::Matrix2d f = j == i ? lower : j < i ? z : Eigen::Matrix2d::Identity().eval();
        op = kron(op, f);
      }
      annihilators_.push_back(std::move(op));
    }
  }

  Eigen::Index dim() const { return dim_; }
  const Eigen::MatrixXd& a(int i) const { return annihilators_[i]; }
  Eigen::MatrixXd adag(int i) const { return annihilators_[i].transpose(); }

  Eigen::MatrixXd hamiltonian(const OneBodyOperator& h, const TwoBodyIntegrals& v, double lambda) const {
    const int m = n_ / 2;
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim_, dim_);
    for (int p = 0; p < m; ++p)
      for (int q = 0; q < m; ++q)
        for (int s = 0; s < 2; ++s) out += h(p, q) * adag(2 * p + s) * a(2 * q + s);
    for (int p = 0; p < m; ++p)
      for (int q = 0; q < m; ++q)
        for (int r = 0; r < m; ++r)
          for (int t = 0; t < m; ++t) {
            const double pqrs = v(p, r, q, t);
            if (pqrs == 0.0) continue;
            for (int sg = 0; sg < 2; ++sg)
              for (int tau = 0; tau < 2; ++tau) {
                out += 0.5 * lambda * pqrs * adag(2 * p + sg) * adag(2 * q + tau) * a(2 * t + tau) * a(2 * r + sg);
              }
          }
    return out;
  }

  /// Basis indices with exactly n_electrons set bits, ascending.
  std::vector<Eigen::Index> particle_subspace(int n_electrons) const {
    std::vector<Eigen::Index> out;
    for (Eigen::Index k = 0; k < dim_; ++k)
      if (std::popcount(static_cast<std::uint64_t>(k)) == n_electrons) out.push_back(k);
    return out;
  }

  Eigen::VectorXd particle_spectrum(const OneBodyOperator& h, const TwoBodyIntegrals& v, double lambda,
                                    int n_electrons) const {
    const Eigen::MatrixXd full = hamiltonian(h, v, lambda);
    const auto idx = particle_subspace(n_electrons);
    const auto d = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXd block(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) block(i, j) = full(idx[i], idx[j]);
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(block, Eigen::EigenvaluesOnly).eigenvalues();
  }

 private:
  static Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
  }

  int n_;
  Eigen::Index dim_;
  std::vector<Eigen::MatrixXd> annihilators_;
};

}  // namespace rdmrep::testing
