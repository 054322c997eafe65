// Copyright 2026 The rdmrep Authors
// SPDX-License-Identifier: Apache-2.0

#include "rdmrep/textio.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string>

namespace rdmrep {

namespace {

struct Entry {
  std::string key;
  nlohmann::json value;
  int line = 0;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

int bracket_depth(const std::string& s) {
  int depth = 0;
  for (char c : s) depth += c == '[' ? 1 : c == ']' ? -1 : 0;
  return depth;
}

std::vector<Entry> parse_entries(std::istream& in) {
  std::vector<Entry> out;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected `key = value`", line_no);
    Entry e{trim(line.substr(0, eq)), {}, line_no};
    std::string text = trim(line.substr(eq + 1));
    while (bracket_depth(text) > 0 && std::getline(in, raw)) {
      ++line_no;
      text += " " + trim(raw.substr(0, raw.find('#')));
    }
    if (e.key.empty()) throw ParseError("missing key", e.line);
    try {
      e.value = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error&) {
      throw ParseError("cannot parse value of `" + e.key + "`", e.line);
    }
    out.push_back(std::move(e));
  }
  return out;
}

double as_number(const Entry& e) {
  if (!e.value.is_number()) throw ParseError("`" + e.key + "` must be a number", e.line);
  return e.value.get<double>();
}

Eigen::VectorXd as_vector(const nlohmann::json& value, const Entry& e) {
  if (!value.is_array()) throw ParseError("`" + e.key + "` must be an array of numbers", e.line);
  Eigen::VectorXd v(static_cast<Eigen::Index>(value.size()));
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (!value[i].is_number()) throw ParseError("`" + e.key + "` must be an array of numbers", e.line);
    v(static_cast<Eigen::Index>(i)) = value[i].get<double>();
  }
  return v;
}

Eigen::MatrixXd as_square_matrix(const Entry& e, int m) {
  if (!e.value.is_array() || e.value.size() != static_cast<std::size_t>(m)) {
    throw DimensionError("line " + std::to_string(e.line) + ": `" + e.key + "` must have " + std::to_string(m) + " rows");
  }
  Eigen::MatrixXd out(m, m);
  for (int r = 0; r < m; ++r) {
    const Eigen::VectorXd row = as_vector(e.value[static_cast<std::size_t>(r)], e);
    if (row.size() != m) {
      throw DimensionError("line " + std::to_string(e.line) + ": `" + e.key + "` row has wrong length");
    }
    out.row(r) = row.transpose();
  }
  return out;
}

std::optional<OneRDM> gamma_from(const Entry& e, int m) {
  Eigen::MatrixXd g;
  if (e.key == "occupations") {
    const Eigen::VectorXd n = as_vector(e.value, e);
    if (n.size() != m) {
      throw DimensionError("line " + std::to_string(e.line) + ": expected " + std::to_string(m) + " occupations");
    }
    g = n.asDiagonal();
  } else if (e.key == "matrix") {
    g = as_square_matrix(e, m);
  } else {
    return std::nullopt;
  }
  try {
    return OneRDM(g);
  } catch (const std::invalid_argument& err) {
    throw ParseError(err.what(), e.line);
  }
}

template <class Parser>
auto read_file(const std::filesystem::path& path, int m, Parser&& parse) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return parse(in, m);
}

}  // namespace

OneRDM parse_gamma_spec(std::istream& in, int m_spatial) {
  std::optional<OneRDM> gamma;
  for (const auto& e : parse_entries(in)) {
    auto g = gamma_from(e, m_spatial);
    if (!g) throw ParseError("unknown key `" + e.key + "`", e.line);
    if (gamma) throw ParseError("1-RDM given twice", e.line);
    gamma = std::move(g);
  }
  if (!gamma) throw ParseError("no `occupations` or `matrix` entry");
  return *gamma;
}

OneRDM read_gamma_spec(const std::filesystem::path& path, int m_spatial) {
  return read_file(path, m_spatial, [](std::istream& in, int m) { return parse_gamma_spec(in, m); });
}

std::vector<PotentialEntry> parse_potentials(std::istream& in, int m_spatial) {
  std::vector<PotentialEntry> out;
  double lambda = 1.0;
  for (const auto& e : parse_entries(in)) {
    if (e.key == "lambda") {
      lambda = as_number(e);
    } else if (e.key == "h") {
      try {
        out.push_back({lambda, OneBodyOperator(as_square_matrix(e, m_spatial))});
      } catch (const std::invalid_argument& err) {
        throw ParseError(err.what(), e.line);
      }
    } else {
      throw ParseError("unknown key `" + e.key + "`", e.line);
    }
  }
  return out;
}

std::vector<PotentialEntry> read_potentials(const std::filesystem::path& path, int m_spatial) {
  return read_file(path, m_spatial, [](std::istream& in, int m) { return parse_potentials(in, m); });
}

void write_potentials(std::ostream& out, const std::vector<PotentialEntry>& entries) {
  char buf[64];
  for (const auto& entry : entries) {
    std::snprintf(buf, sizeof buf, "%.17g", entry.lambda);
    out << "lambda = " << buf << "\nh = [";
    const auto& h = entry.h.matrix();
    for (Eigen::Index r = 0; r < h.rows(); ++r) {
      out << (r ? ", [" : "[");
      for (Eigen::Index c = 0; c < h.cols(); ++c) {
        std::snprintf(buf, sizeof buf, "%.17g", h(r, c));
        out << (c ? ", " : "") << buf;
      }
      out << "]";
    }
    out << "]\n";
  }
}

std::vector<FunctionalPoint> parse_functional_table(std::istream& in, int m_spatial) {
  std::vector<FunctionalPoint> out;
  std::optional<double> pending;
  for (const auto& e : parse_entries(in)) {
    if (e.key == "w") {
      if (pending) throw ParseError("`w` without a 1-RDM", e.line);
      pending = as_number(e);
      continue;
    }
    auto g = gamma_from(e, m_spatial);
    if (!g) throw ParseError("unknown key `" + e.key + "`", e.line);
    if (!pending) throw ParseError("1-RDM without a preceding `w`", e.line);
    out.push_back({*pending, std::move(*g)});
    pending.reset();
  }
  if (pending) throw ParseError("trailing `w` without a 1-RDM");
  return out;
}

std::vector<FunctionalPoint> read_functional_table(const std::filesystem::path& path, int m_spatial) {
  return read_file(path, m_spatial, [](std::istream& in, int m) { return parse_functional_table(in, m); });
}

}  // namespace rdmrep
