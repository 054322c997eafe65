// Copyright 2026 The rdmrep Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rdmrep/determinants.hpp"
#include "rdmrep/integrals.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <utility>
#include <vector>

namespace rdmrep {

/// The N-electron Hilbert space as a direct sum of (n_alpha, n_beta) sectors.
/// Many-body vectors are laid out sector by sector, n_alpha ascending.
class FockSpace {
 public:
  FockSpace() = default;
  FockSpace(int m_spatial, int n_electrons);

  int m_spatial() const { return m_spatial_; }
  int n_electrons() const { return n_electrons_; }
  const std::vector<Sector>& sectors() const { return sectors_; }
  std::size_t n_sectors() const { return sectors_.size(); }
  Eigen::Index offset(std::size_t sector) const { return offsets_[sector]; }
  Eigen::Index sector_dim(std::size_t sector) const { return static_cast<Eigen::Index>(sectors_[sector].size()); }
  Eigen::Index dim() const { return offsets_.back(); }

 private:
  int m_spatial_ = 0;
  int n_electrons_ = 0;
  std::vector<Sector> sectors_;
  std::vector<Eigen::Index> offsets_{0};
};

/// Symmetric one-body matrices are parameterized by their upper triangle;
/// parameter k addresses (p, q) with p <= q.
int symmetric_param_count(int m);
Eigen::VectorXd pack_symmetric(const Eigen::MatrixXd& g);
Eigen::MatrixXd unpack_symmetric(const Eigen::VectorXd& x, int m);

/// Precomputed sector matrices of one system: the excitation generators
/// A_k = E_pq + E_qp (E_pp on the diagonal) and the interaction V_ee.
/// H(g, lambda) = sum_k x_k A_k + lambda V_ee is then a linear combination.
class ModelSpace {
 public:
  explicit ModelSpace(SystemSpec spec);

  const SystemSpec& spec() const { return spec_; }
  const FockSpace& fock() const { return fock_; }
  int m_spatial() const { return spec_.m_spatial; }
  int n_electrons() const { return spec_.n_electrons; }
  std::size_t n_sectors() const { return fock_.n_sectors(); }
  int n_params() const { return static_cast<int>(params_.size()); }
  std::pair<int, int> param_orbitals(int k) const { return params_[k]; }

  const Eigen::MatrixXd& generator(std::size_t sector, int k) const { return generators_[sector][k]; }
  const Eigen::MatrixXd& interaction(std::size_t sector) const { return interaction_[sector]; }

  Eigen::MatrixXd hamiltonian(std::size_t sector, const OneBodyOperator& h, double lambda) const;
  /// Embed per-sector blocks into a dense dim x dim block-diagonal matrix.
  Eigen::MatrixXd block_diagonal(const std::vector<Eigen::MatrixXd>& blocks) const;
  Eigen::MatrixXd full_generator(int k) const;
  Eigen::MatrixXd full_interaction() const;

 private:
  SystemSpec spec_;
  FockSpace fock_;
  std::vector<std::pair<int, int>> params_;
  std::vector<std::vector<Eigen::MatrixXd>> generators_;
  std::vector<Eigen::MatrixXd> interaction_;
};

struct SectorSpectrum {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

std::vector<SectorSpectrum> spectrum(const ModelSpace& space, const OneBodyOperator& h, double lambda);

/// Lowest eigenvalue of h + lambda V_ee over all sectors and an orthonormal
/// basis (full-space vectors) of every eigenvector within the tolerance.
struct GroundSpace {
  double energy = 0.0;
  std::vector<Eigen::VectorXd> vectors;
  std::vector<std::size_t> sectors;

  std::size_t degeneracy() const { return vectors.size(); }
};

inline constexpr double kDefaultDegeneracyTol = 1e-9;

GroundSpace ground_state(const ModelSpace& space, const OneBodyOperator& h, double lambda,
                         double degeneracy_tol = kDefaultDegeneracyTol);
GroundSpace ground_state(const SystemSpec& spec, double lambda, double degeneracy_tol = kDefaultDegeneracyTol);

/// Mixed state sum_i p_i |psi_i><psi_i| with full-space vectors.
struct Ensemble {
  std::vector<double> weights;
  std::vector<Eigen::VectorXd> states;

  static Ensemble pure(Eigen::VectorXd state);
  static Ensemble equal_weight(const GroundSpace& ground);
  /// Throws std::invalid_argument on bad weights, norms or dimensions.
  void validate(Eigen::Index dim) const;
};

/// Spin-summed spatial one-electron reduced density matrix.
class OneRDM {
 public:
  OneRDM() = default;
  /// Throws std::invalid_argument unless symmetric to 1e-10.
  explicit OneRDM(Eigen::MatrixXd matrix);
  static OneRDM diagonal(const Eigen::VectorXd& occupations);

  int m_spatial() const { return static_cast<int>(matrix_.rows()); }
  const Eigen::MatrixXd& matrix() const { return matrix_; }
  double operator()(int p, int q) const { return matrix_(p, q); }
  double trace() const { return matrix_.trace(); }
  /// Eigenvalues in descending order.
  Eigen::VectorXd natural_occupations() const;

 private:
  Eigen::MatrixXd matrix_;
};

/// Spin-summed 2-RDM G(pq, rs) = sum_{sigma tau} <a+_{p sigma} a+_{q tau} a_{s tau} a_{r sigma}>,
/// stored as an M^2 x M^2 matrix with row p*M+q and column r*M+s.
struct TwoRDM {
  int m_spatial = 0;
  Eigen::MatrixXd matrix;

  double operator()(int p, int q, int r, int s) const { return matrix(p * m_spatial + q, r * m_spatial + s); }
  double trace() const { return matrix.trace(); }
};

OneRDM one_rdm(const FockSpace& fock, const Ensemble& ensemble);
OneRDM one_rdm(const FockSpace& fock, const Eigen::VectorXd& state);
TwoRDM two_rdm(const FockSpace& fock, const Ensemble& ensemble);
TwoRDM two_rdm(const FockSpace& fock, const Eigen::VectorXd& state);

/// W = 1/2 sum (pr|qs) G(pq, rs).
double vee_expectation(const TwoRDM& rdm, const TwoBodyIntegrals& v);

}  // namespace rdmrep
