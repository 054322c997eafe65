// Copyright 2026 The rdmrep Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace rdmrep {

/// Raised when an input file or text block cannot be interpreted.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Raised when operands disagree on orbital count or basis size.
class DimensionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Real-symmetric operator on the spatial orbitals (h, trial potentials g).
class OneBodyOperator {
 public:
  OneBodyOperator() = default;
  explicit OneBodyOperator(int m_spatial);
  /// Throws std::invalid_argument if the matrix is not symmetric to 1e-12.
  explicit OneBodyOperator(Eigen::MatrixXd matrix);

  int m_spatial() const { return static_cast<int>(matrix_.rows()); }
  const Eigen::MatrixXd& matrix() const { return matrix_; }
  double operator()(int p, int q) const { return matrix_(p, q); }
  void set(int p, int q, double value);

  static OneBodyOperator zero(int m_spatial) { return OneBodyOperator(m_spatial); }

 private:
  Eigen::MatrixXd matrix_;
};

/// Two-electron integrals (pq|rs) in chemists' notation for real orbitals.
///
/// Only one representative of each 8-fold symmetry class is stored, so the
/// relations (pq|rs) = (qp|rs) = (pq|sr) = (rs|pq) hold exactly.
class TwoBodyIntegrals {
 public:
  TwoBodyIntegrals() = default;
  explicit TwoBodyIntegrals(int m_spatial);

  int m_spatial() const { return m_; }
  double operator()(int p, int q, int r, int s) const { return data_[index(p, q, r, s)]; }
  void set(int p, int q, int r, int s, double value) { data_[index(p, q, r, s)] = value; }

  /// Dense M^2 x M^2 view with row p*M+q and column r*M+s.
  Eigen::MatrixXd pair_matrix() const;
  /// Number of stored canonical representatives.
  std::size_t canonical_size() const { return data_.size(); }

  bool operator==(const TwoBodyIntegrals&) const = default;

 private:
  std::size_t index(int p, int q, int r, int s) const;

  int m_ = 0;
  std::vector<double> data_;
};

struct SystemSpec {
  int m_spatial = 0;
  int n_electrons = 0;
  int ms2 = 0;
  OneBodyOperator h;
  TwoBodyIntegrals v;
  double core_energy = 0.0;

  /// Throws std::invalid_argument when fields are inconsistent.
  void validate() const;
};

/// Orbital rotation phi'_a = sum_p U(p, a) phi_p applied to the integrals.
OneBodyOperator rotate(const OneBodyOperator& h, const Eigen::MatrixXd& u);
TwoBodyIntegrals rotate(const TwoBodyIntegrals& v, const Eigen::MatrixXd& u);
SystemSpec rotate(const SystemSpec& spec, const Eigen::MatrixXd& u);

SystemSpec parse_fcidump(std::istream& in);
SystemSpec read_fcidump(const std::filesystem::path& path);
void write_fcidump(std::ostream& out, const SystemSpec& spec);
void write_fcidump(const std::filesystem::path& path, const SystemSpec& spec);

/// Smallest eigenvalue of the pair-index integral matrix; negative values
/// mean the interaction is not a Gram matrix of orbital products.
double pair_matrix_min_eigenvalue(const TwoBodyIntegrals& v);

using ModelParams = std::map<std::string, double>;

/// Bundled analytic models: "hubbard_dimer" (t, U) and "model_a" (J11, J22, J12, K12).
/// Non-PSD interactions append a message to `warnings` rather than failing.
SystemSpec builtin_model(const std::string& name, const ModelParams& params = {},
                         std::vector<std::string>* warnings = nullptr);

SystemSpec hubbard_dimer(double t = 1.0, double u = 4.0);
SystemSpec model_a(double j11 = 1.0, double j22 = 1.0, double j12 = 0.9, double k12 = 0.1);

}  // namespace rdmrep
