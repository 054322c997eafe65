// Copyright 2026 The rdmrep Authors
// SPDX-License-Identifier: Apache-2.0

#include "rdmrep/manybody.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rdmrep {

FockSpace::FockSpace(int m_spatial, int n_electrons) : m_spatial_(m_spatial), n_electrons_(n_electrons) {
  if (n_electrons < 0 || n_electrons > 2 * m_spatial) throw std::invalid_argument("electron count out of range");
  for (int na = std::max(0, n_electrons - m_spatial); na <= std::min(n_electrons, m_spatial); ++na) {
    sectors_.push_back(enumerate_sector(m_spatial, na, n_electrons - na));
    offsets_.push_back(offsets_.back() + static_cast<Eigen::Index>(sectors_.back().size()));
  }
}

int symmetric_param_count(int m) { return m * (m + 1) / 2; }

Eigen::VectorXd pack_symmetric(const Eigen::MatrixXd& g) {
  const auto m = static_cast<int>(g.rows());
  Eigen::VectorXd x(symmetric_param_count(m));
  int k = 0;
  for (int p = 0; p < m; ++p)
    for (int q = p; q < m; ++q) x(k++) = g(p, q);
  return x;
}

Eigen::MatrixXd unpack_symmetric(const Eigen::VectorXd& x, int m) {
  Eigen::MatrixXd g(m, m);
  int k = 0;
  for (int p = 0; p < m; ++p)
    for (int q = p; q < m; ++q) {
      g(p, q) = x(k);
      g(q, p) = x(k);
      ++k;
    }
  return g;
}

ModelSpace::ModelSpace(SystemSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  fock_ = FockSpace(spec_.m_spatial, spec_.n_electrons);
  const int m = spec_.m_spatial;
  for (int p = 0; p < m; ++p)
    for (int q = p; q < m; ++q) params_.emplace_back(p, q);
  for (const auto& sector : fock_.sectors()) {
    std::vector<Eigen::MatrixXd> gens;
    gens.reserve(params_.size());
    for (auto [p, q] : params_) {
      Eigen::MatrixXd e = build_excitation(p, q, sector);
      if (p != q) e += build_excitation(q, p, sector);
      gens.push_back(std::move(e));
    }
    generators_.push_back(std::move(gens));
    interaction_.push_back(build_two_body(spec_.v, sector));
  }
}

Eigen::MatrixXd ModelSpace::hamiltonian(std::size_t sector, const OneBodyOperator& h, double lambda) const {
  if (h.m_spatial() != m_spatial()) throw DimensionError("one-body operator has wrong orbital count");
  Eigen::MatrixXd out = lambda * interaction_[sector];
  const Eigen::VectorXd x = pack_symmetric(h.matrix());
  for (int k = 0; k < n_params(); ++k) {
    if (x(k) != 0.0) out.noalias() += x(k) * generators_[sector][k];
  }
  return out;
}

Eigen::MatrixXd ModelSpace::block_diagonal(const std::vector<Eigen::MatrixXd>& blocks) const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(fock_.dim(), fock_.dim());
  for (std::size_t s = 0; s < blocks.size(); ++s) {
    const auto n = fock_.sector_dim(s);
    out.block(fock_.offset(s), fock_.offset(s), n, n) = blocks[s];
  }
  return out;
}

Eigen::MatrixXd ModelSpace::full_generator(int k) const {
  std::vector<Eigen::MatrixXd> blocks;
  for (std::size_t s = 0; s < n_sectors(); ++s) blocks.push_back(generators_[s][k]);
  return block_diagonal(blocks);
}

Eigen::MatrixXd ModelSpace::full_interaction() const { return block_diagonal(interaction_); }

std::vector<SectorSpectrum> spectrum(const ModelSpace& space, const OneBodyOperator& h, double lambda) {
  std::vector<SectorSpectrum> out;
  out.reserve(space.n_sectors());
  for (std::size_t s = 0; s < space.n_sectors(); ++s) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(space.hamiltonian(s, h, lambda));
    out.push_back({solver.eigenvalues(), solver.eigenvectors()});
  }
  return out;
}

GroundSpace ground_state(const ModelSpace& space, const OneBodyOperator& h, double lambda, double degeneracy_tol) {
  const auto spectra = spectrum(space, h, lambda);
  GroundSpace ground;
  ground.energy = std::numeric_limits<double>::infinity();
  for (const auto& sp : spectra) {
    if (sp.values.size() > 0) ground.energy = std::min(ground.energy, sp.values(0));
  }
  const double cutoff = ground.energy + degeneracy_tol * std::max(1.0, std::abs(ground.energy));
  const auto& fock = space.fock();
  for (std::size_t s = 0; s < spectra.size(); ++s) {
    for (Eigen::Index k = 0; k < spectra[s].values.size() && spectra[s].values(k) <= cutoff; ++k) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(fock.dim());
      v.segment(fock.offset(s), fock.sector_dim(s)) = spectra[s].vectors.col(k);
      ground.vectors.push_back(std::move(v));
      ground.sectors.push_back(s);
    }
  }
  return ground;
}

GroundSpace ground_state(const SystemSpec& spec, double lambda, double degeneracy_tol) {
  return ground_state(ModelSpace(spec), spec.h, lambda, degeneracy_tol);
}

Ensemble Ensemble::pure(Eigen::VectorXd state) { return Ensemble{{1.0}, {std::move(state)}}; }

Ensemble Ensemble::equal_weight(const GroundSpace& ground) {
  Ensemble out;
  const double w = 1.0 / static_cast<double>(ground.degeneracy());
  for (const auto& v : ground.vectors) {
    out.weights.push_back(w);
    out.states.push_back(v);
  }
  return out;
}

void Ensemble::validate(Eigen::Index dim) const {
  if (weights.size() != states.size() || weights.empty()) throw std::invalid_argument("ensemble size mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] >= 0.0)) throw std::invalid_argument("ensemble weights must be nonnegative");
    if (states[i].size() != dim) throw DimensionError("ensemble state does not match the basis");
    if (std::abs(states[i].norm() - 1.0) > 1e-8) throw std::invalid_argument("ensemble states must be normalized");
    total += weights[i];
  }
  if (std::abs(total - 1.0) > 1e-10) throw std::invalid_argument("ensemble weights must sum to one");
}

OneRDM::OneRDM(Eigen::MatrixXd matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) throw std::invalid_argument("1-RDM must be square");
  if (matrix_.size() > 0 && (matrix_ - matrix_.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("1-RDM must be symmetric");
  }
  matrix_ = 0.5 * (matrix_ + matrix_.transpose()).eval();
}

OneRDM OneRDM::diagonal(const Eigen::VectorXd& occupations) { return OneRDM(Eigen::MatrixXd(occupations.asDiagonal())); }

Eigen::VectorXd OneRDM::natural_occupations() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().reverse();
}

OneRDM one_rdm(const FockSpace& fock, const Ensemble& ensemble) {
  ensemble.validate(fock.dim());
  const int m = fock.m_spatial();
  Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(m, m);
  for (std::size_t i = 0; i < ensemble.states.size(); ++i) {
    const Eigen::VectorXd& c = ensemble.states[i];
    const double w = ensemble.weights[i];
    for (std::size_t s = 0; s < fock.n_sectors(); ++s) {
      const Sector& sector = fock.sectors()[s];
      const Eigen::Index off = fock.offset(s);
      for (std::size_t j = 0; j < sector.size(); ++j) {
        const double cj = c(off + static_cast<Eigen::Index>(j));
        if (cj == 0.0) continue;
        for (int a = 0; a < 2 * m; ++a) {
          if (!sector[j].occupied(a)) continue;
          for (int b = a % 2; b < 2 * m; b += 2) {
            auto image = apply_single(sector[j], b, a);
            if (!image) continue;
            const auto idx = off + static_cast<Eigen::Index>(*sector.index_of(image->det));
            gamma(b / 2, a / 2) += w * c(idx) * cj * image->phase;
          }
        }
      }
    }
  }
  return OneRDM(Eigen::MatrixXd(0.5 * (gamma + gamma.transpose())));
}

OneRDM one_rdm(const FockSpace& fock, const Eigen::VectorXd& state) { return one_rdm(fock, Ensemble::pure(state)); }

TwoRDM two_rdm(const FockSpace& fock, const Ensemble& ensemble) {
  ensemble.validate(fock.dim());
  const int m = fock.m_spatial();
  const int n = 2 * m;
  TwoRDM out{m, Eigen::MatrixXd::Zero(m * m, m * m)};
  for (std::size_t i = 0; i < ensemble.states.size(); ++i) {
    const Eigen::VectorXd& c = ensemble.states[i];
    const double w = ensemble.weights[i];
    for (std::size_t sec = 0; sec < fock.n_sectors(); ++sec) {
      const Sector& sector = fock.sectors()[sec];
      const Eigen::Index off = fock.offset(sec);
      for (std::size_t j = 0; j < sector.size(); ++j) {
        const double cj = c(off + static_cast<Eigen::Index>(j));
        if (cj == 0.0) continue;
        for (int r = 0; r < n; ++r) {
          auto after_r = annihilate(Excitation{sector[j], 1}, r);
          if (!after_r) continue;
          for (int s = 0; s < n; ++s) {
            auto after_s = annihilate(*after_r, s);
            if (!after_s) continue;
            for (int q = s % 2; q < n; q += 2) {
              auto after_q = create(*after_s, q);
              if (!after_q) continue;
              for (int p = r % 2; p < n; p += 2) {
                auto image = create(*after_q, p);
                if (!image) continue;
                const auto idx = off + static_cast<Eigen::Index>(*sector.index_of(image->det));
                out.matrix((p / 2) * m + q / 2, (r / 2) * m + s / 2) += w * c(idx) * cj * image->phase;
              }
            }
          }
        }
      }
    }
  }
  return out;
}

TwoRDM two_rdm(const FockSpace& fock, const Eigen::VectorXd& state) { return two_rdm(fock, Ensemble::pure(state)); }

double vee_expectation(const TwoRDM& rdm, const TwoBodyIntegrals& v) {
  const int m = rdm.m_spatial;
  if (v.m_spatial() != m) throw DimensionError("2-RDM and integrals disagree on orbital count");
  double total = 0.0;
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q)
      for (int r = 0; r < m; ++r)
        for (int s = 0; s < m; ++s) total += v(p, r, q, s) * rdm(p, q, r, s);
  return 0.5 * total;
}

}  // namespace rdmrep
