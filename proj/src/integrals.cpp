// Copyright 2026 The rdmrep Authors
// SPDX-License-Identifier: Apache-2.0

#include "rdmrep/integrals.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <regex>
#include <sstream>

namespace rdmrep {

namespace {

std::size_t pair_index(int p, int q) {
  const auto a = static_cast<std::size_t>(std::max(p, q));
  const auto b = static_cast<std::size_t>(std::min(p, q));
  return a * (a + 1) / 2 + b;
}

// Doubles are parsed with from_chars so that the decimal literal maps to the
// correctly rounded binary value regardless of locale.
std::optional<double> parse_double(std::string token) {
  std::replace_if(token.begin(), token.end(), [](char c) { return c == 'D' || c == 'd'; }, 'e');
  if (!token.empty() && token.front() == '+') token.erase(0, 1);
  double value = 0.0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

std::optional<int> parse_int(const std::string& token) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
  return s;
}

bool is_header_end(const std::string& line) {
  const auto u = upper(line);
  if (u.find("&END") != std::string::npos) return true;
  auto first = u.find_first_not_of(" \t\r");
  return first != std::string::npos && u[first] == '/';
}

}  // namespace

OneBodyOperator::OneBodyOperator(int m_spatial) : matrix_(Eigen::MatrixXd::Zero(m_spatial, m_spatial)) {}

OneBodyOperator::OneBodyOperator(Eigen::MatrixXd matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) throw std::invalid_argument("one-body operator must be square");
  if (matrix_.size() > 0 && (matrix_ - matrix_.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("one-body operator must be symmetric");
  }
  matrix_ = 0.5 * (matrix_ + matrix_.transpose()).eval();
}

void OneBodyOperator::set(int p, int q, double value) {
  matrix_(p, q) = value;
  matrix_(q, p) = value;
}

TwoBodyIntegrals::TwoBodyIntegrals(int m_spatial) : m_(m_spatial) {
  const std::size_t npair = static_cast<std::size_t>(m_) * (m_ + 1) / 2;
  data_.assign(npair * (npair + 1) / 2, 0.0);
}

std::size_t TwoBodyIntegrals::index(int p, int q, int r, int s) const {
  return pair_index(static_cast<int>(pair_index(p, q)), static_cast<int>(pair_index(r, s)));
}

Eigen::MatrixXd TwoBodyIntegrals::pair_matrix() const {
  Eigen::MatrixXd out(m_ * m_, m_ * m_);
  for (int p = 0; p < m_; ++p)
    for (int q = 0; q < m_; ++q)
      for (int r = 0; r < m_; ++r)
        for (int s = 0; s < m_; ++s) out(p * m_ + q, r * m_ + s) = (*this)(p, q, r, s);
  return out;
}

void SystemSpec::validate() const {
  if (m_spatial <= 0) throw std::invalid_argument("system needs at least one orbital");
  if (n_electrons < 0 || n_electrons > 2 * m_spatial) {
    throw std::invalid_argument("electron count must lie in [0, 2*M]");
  }
  if (h.m_spatial() != m_spatial || v.m_spatial() != m_spatial) {
    throw DimensionError("integral dimensions do not match the orbital count");
  }
}

OneBodyOperator rotate(const OneBodyOperator& h, const Eigen::MatrixXd& u) {
  Eigen::MatrixXd out = u.transpose() * h.matrix() * u;
  return OneBodyOperator(Eigen::MatrixXd(0.5 * (out + out.transpose())));
}

TwoBodyIntegrals rotate(const TwoBodyIntegrals& v, const Eigen::MatrixXd& u) {
  const int m = v.m_spatial();
  if (u.rows() != m || u.cols() != m) throw DimensionError("rotation size mismatch");
  // (U (x) U) acts on the compound pair index p*M+q.
  Eigen::MatrixXd uu(m * m, m * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) uu(a * m + b, p * m + q) = u(a, p) * u(b, q);
  const Eigen::MatrixXd rotated = uu.transpose() * v.pair_matrix() * uu;
  TwoBodyIntegrals out(m);
  for (int p = 0; p < m; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r < m; ++r)
        for (int s = 0; s <= r; ++s) out.set(p, q, r, s, rotated(p * m + q, r * m + s));
  return out;
}

SystemSpec rotate(const SystemSpec& spec, const Eigen::MatrixXd& u) {
  SystemSpec out = spec;
  out.h = rotate(spec.h, u);
  out.v = rotate(spec.v, u);
  return out;
}

SystemSpec parse_fcidump(std::istream& in) {
  std::string line;
  int line_no = 0;
  std::string header;
  bool in_header = false;
  bool header_done = false;
  while (!header_done && std::getline(in, line)) {
    ++line_no;
    if (!in_header) {
      if (upper(line).find("&FCI") == std::string::npos) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        throw ParseError("expected &FCI header", line_no);
      }
      in_header = true;
    }
    header += line + "\n";
    if (is_header_end(line)) header_done = true;
  }
  if (!header_done) throw ParseError("unterminated &FCI header", line_no);

  // Header entries look like KEY=v1,v2,...; split at each KEY= occurrence.
  std::map<std::string, std::string> fields;
  {
    std::string body = upper(header);
    body.erase(0, body.find("&FCI") + 4);
    const std::regex key_re(R"(([A-Z_][A-Z0-9_]*)\s*=)");
    struct Key {
      std::string name;
      std::size_t start;
      std::size_t value_begin;
    };
    std::vector<Key> keys;
    for (auto it = std::sregex_iterator(body.begin(), body.end(), key_re); it != std::sregex_iterator(); ++it) {
      const auto pos = static_cast<std::size_t>(it->position());
      keys.push_back({(*it)[1].str(), pos, pos + static_cast<std::size_t>(it->length())});
    }
    for (std::size_t k = 0; k < keys.size(); ++k) {
      const std::size_t end = k + 1 < keys.size() ? keys[k + 1].start : body.size();
      fields[keys[k].name] = body.substr(keys[k].value_begin, end - keys[k].value_begin);
    }
  }
  auto header_int = [&](const std::string& key) -> std::optional<int> {
    auto it = fields.find(key);
    if (it == fields.end()) return std::nullopt;
    std::string digits;
    for (char c : it->second) {
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+') digits += c;
      else if (!digits.empty()) break;
    }
    if (!digits.empty() && digits.front() == '+') digits.erase(0, 1);
    auto value = parse_int(digits);
    if (!value) throw ParseError("malformed header field " + key);
    return value;
  };

  SystemSpec spec;
  const auto norb = header_int("NORB");
  if (!norb) throw ParseError("missing header field NORB");
  const auto nelec = header_int("NELEC");
  if (!nelec) throw ParseError("missing header field NELEC");
  spec.m_spatial = *norb;
  spec.n_electrons = *nelec;
  spec.ms2 = header_int("MS2").value_or(0);
  if (spec.m_spatial <= 0) throw ParseError("NORB must be positive");
  spec.h = OneBodyOperator(spec.m_spatial);
  spec.v = TwoBodyIntegrals(spec.m_spatial);

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    for (std::string tok; ls >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (tokens.size() != 5) throw ParseError("expected 'value i j k l'", line_no);
    const auto value = parse_double(tokens[0]);
    if (!value) throw ParseError("malformed value '" + tokens[0] + "'", line_no);
    int idx[4];
    for (int k = 0; k < 4; ++k) {
      auto parsed = parse_int(tokens[k + 1]);
      if (!parsed) throw ParseError("malformed index '" + tokens[k + 1] + "'", line_no);
      if (*parsed < 0 || *parsed > spec.m_spatial) {
        throw ParseError("index " + tokens[k + 1] + " out of range", line_no);
      }
      idx[k] = *parsed;
    }
    const auto [i, j, k, l] = idx;
    if (i == 0 && j == 0 && k == 0 && l == 0) {
      spec.core_energy = *value;
    } else if (i > 0 && j > 0 && k > 0 && l > 0) {
      spec.v.set(i - 1, j - 1, k - 1, l - 1, *value);
    } else if (i > 0 && j > 0 && k == 0 && l == 0) {
      spec.h.set(i - 1, j - 1, *value);
    } else if (i > 0 && j == 0 && k == 0 && l == 0) {
      // Orbital energy lines carry no Hamiltonian information.
    } else {
      throw ParseError("unsupported index pattern", line_no);
    }
  }
  if (spec.n_electrons < 0 || spec.n_electrons > 2 * spec.m_spatial) {
    throw ParseError("NELEC inconsistent with NORB");
  }
  return spec;
}

SystemSpec read_fcidump(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return parse_fcidump(in);
}

void write_fcidump(std::ostream& out, const SystemSpec& spec) {
  char buf[64];
  auto fmt = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
  };
  const int m = spec.m_spatial;
  out << "&FCI NORB=" << m << ",NELEC=" << spec.n_electrons << ",MS2=" << spec.ms2 << ",\n";
  out << " ORBSYM=";
  for (int p = 0; p < m; ++p) out << "1,";
  out << "\n ISYM=1,\n&END\n";
  for (int p = 0; p < m; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r < m; ++r)
        for (int s = 0; s <= r; ++s) {
          if (p * (p + 1) / 2 + q < r * (r + 1) / 2 + s) continue;
          const double value = spec.v(p, q, r, s);
          if (value != 0.0) out << fmt(value) << ' ' << p + 1 << ' ' << q + 1 << ' ' << r + 1 << ' ' << s + 1 << '\n';
        }
  for (int p = 0; p < m; ++p)
    for (int q = 0; q <= p; ++q) {
      const double value = spec.h(p, q);
      if (value != 0.0) out << fmt(value) << ' ' << p + 1 << ' ' << q + 1 << " 0 0\n";
    }
  out << fmt(spec.core_energy) << " 0 0 0 0\n";
}

void write_fcidump(const std::filesystem::path& path, const SystemSpec& spec) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path.string());
  write_fcidump(out, spec);
}

double pair_matrix_min_eigenvalue(const TwoBodyIntegrals& v) {
  if (v.m_spatial() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(v.pair_matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

SystemSpec hubbard_dimer(double t, double u) {
  SystemSpec spec;
  spec.m_spatial = 2;
  spec.n_electrons = 2;
  spec.h = OneBodyOperator(2);
  spec.h.set(0, 1, -t);
  spec.v = TwoBodyIntegrals(2);
  spec.v.set(0, 0, 0, 0, u);
  spec.v.set(1, 1, 1, 1, u);
  return spec;
}

SystemSpec model_a(double j11, double j22, double j12, double k12) {
  SystemSpec spec;
  spec.m_spatial = 2;
  spec.n_electrons = 2;
  spec.h = OneBodyOperator(2);
  spec.v = TwoBodyIntegrals(2);
  spec.v.set(0, 0, 0, 0, j11);
  spec.v.set(1, 1, 1, 1, j22);
  spec.v.set(0, 0, 1, 1, j12);
  spec.v.set(0, 1, 0, 1, k12);
  return spec;
}

SystemSpec builtin_model(const std::string& name, const ModelParams& params, std::vector<std::string>* warnings) {
  auto take = [&](std::map<std::string, double> defaults) {
    for (const auto& [key, value] : params) {
      auto it = defaults.find(key);
      if (it == defaults.end()) throw std::invalid_argument("model " + name + " has no parameter '" + key + "'");
      it->second = value;
    }
    return defaults;
  };
  SystemSpec spec;
  if (name == "hubbard_dimer") {
    auto p = take({{"t", 1.0}, {"U", 4.0}});
    spec = hubbard_dimer(p["t"], p["U"]);
  } else if (name == "model_a") {
    auto p = take({{"J11", 1.0}, {"J22", 1.0}, {"J12", 0.9}, {"K12", 0.1}});
    spec = model_a(p["J11"], p["J22"], p["J12"], p["K12"]);
  } else {
    throw std::invalid_argument("unknown model '" + name + "'");
  }
  const double lowest = pair_matrix_min_eigenvalue(spec.v);
  if (lowest < -1e-12 && warnings != nullptr) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "interaction of model %s is not positive semidefinite (lowest pair eigenvalue %.6g)",
                  name.c_str(), lowest);
    warnings->emplace_back(buf);
  }
  return spec;
}

}  // namespace rdmrep
