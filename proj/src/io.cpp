#include "specshift/io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "specshift/error.hpp"

namespace specshift::io {
namespace {

using nlohmann::json;

Eigen::MatrixXd read_block(const json& doc, const char* key, int n) {
  const json& rows = doc.at(key);
  if (!rows.is_array() || static_cast<int>(rows.size()) != n) {
    throw ArgumentError(std::string("matrix JSON: '") + key + "' must have " + std::to_string(n) + " rows");
  }
  Eigen::MatrixXd out(n, n);
  for (int j = 0; j < n; ++j) {
    const json& row = rows[j];
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw ArgumentError(std::string("matrix JSON: row ") + std::to_string(j) + " of '" + key + "' must have " +
                          std::to_string(n) + " entries");
    }
    for (int k = 0; k < n; ++k) {
      if (!row[k].is_number()) throw ArgumentError(std::string("matrix JSON: non-numeric entry in '") + key + "'");
      out(j, k) = row[k].get<double>();
    }
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& text, double& out) {
  try {
    std::size_t used = 0;
    out = std::stod(text, &used);
    return used == text.size();
  } catch (const std::logic_error&) {
    return false;
  }
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path temp = target.string() + ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + temp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + temp.string() + "'");
  }
  fs::rename(temp, target);
}

HermitianOperator parse_matrix_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("matrix JSON: ") + e.what());
  }
  try {
    if (!doc.is_object()) throw ArgumentError("matrix JSON: top level must be an object");
    const int n = doc.at("dim").get<int>();
    if (n < 1) throw ArgumentError("matrix JSON: dim must be positive");
    const Eigen::MatrixXd re = read_block(doc, "re", n);
    const Eigen::MatrixXd im = doc.contains("im") ? read_block(doc, "im", n) : Eigen::MatrixXd::Zero(n, n);
    Matrix m(n, n);
    m.real() = re;
    m.imag() = im;
    return HermitianOperator(m);
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("matrix JSON: ") + e.what());
  }
}

HermitianOperator read_matrix_json(const std::string& path) { return parse_matrix_json(read_text(path)); }

std::string matrix_json(const Matrix& m) {
  const int n = static_cast<int>(m.rows());
  std::string out = "{\n  \"dim\": " + std::to_string(n) + ",\n";
  auto block = [&](const char* key, bool imag) {
    out += std::string("  \"") + key + "\": [\n";
    for (int j = 0; j < n; ++j) {
      out += "    [";
      for (int k = 0; k < n; ++k) {
        if (k > 0) out += ", ";
        out += format_double(imag ? m(j, k).imag() : m(j, k).real());
      }
      out += (j + 1 < n) ? "],\n" : "]\n";
    }
    out += "  ]";
  };
  block("re", false);
  out += ",\n";
  block("im", true);
  out += "\n}\n";
  return out;
}

void write_matrix_json(const std::string& path, const Matrix& m) { write_text_atomic(path, matrix_json(m)); }

std::vector<double> read_column_csv(const std::string& path) {
  std::istringstream in(read_text(path));
  std::vector<double> values;
  std::string line;
  bool first = true;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    // Single column: take the first field.
    const std::string field = trim(line.substr(0, line.find(',')));
    double v = 0.0;
    if (!parse_double(field, v)) {
      if (first) {
        first = false;
        continue;
      }
      throw ArgumentError("'" + path + "' line " + std::to_string(lineno) + ": not a number");
    }
    first = false;
    values.push_back(v);
  }
  return values;
}

std::string ssf_grid_csv(const DensityGrid& grid, const SsfGridHeader& header) {
  std::string out;
  out += "# {\n";
  out += "#   \"format\": \"specshift-ssf-grid/1\",\n";
  out += "#   \"method\": \"" + header.method + "\",\n";
  out += "#   \"quad_tol\": " + format_double(header.quad_tol) + ",\n";
  out += "#   \"r_tol\": " + format_double(header.r_tol) + ",\n";
  out += "#   \"grid\": \"" + header.grid + "\",\n";
  out += "#   \"endpoints_hash\": \"" + header.endpoints_hash + "\"\n";
  out += "# }\n";
  out += "lambda,xi\n";
  for (std::size_t i = 0; i < grid.lambda.size(); ++i) {
    out += format_double(grid.lambda[i]) + "," + format_double(grid.value[i]) + "\n";
  }
  return out;
}

void write_ssf_grid_csv(const std::string& path, const DensityGrid& grid, const SsfGridHeader& header) {
  write_text_atomic(path, ssf_grid_csv(grid, header));
}

DensityGrid read_ssf_grid_csv(const std::string& path, SsfGridHeader* header) {
  std::istringstream in(read_text(path));
  std::string line;
  std::string comment;
  DensityGrid grid;
  bool in_rows = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    if (!in_rows) {
      if (line[0] == '#') {
        comment += line.substr(1) + "\n";
      } else if (line == "lambda,xi") {
        in_rows = true;
      } else {
        throw ArgumentError("'" + path + "': expected 'lambda,xi' header");
      }
      continue;
    }
    const auto comma = line.find(',');
    double l = 0.0;
    double x = 0.0;
    if (comma == std::string::npos || !parse_double(trim(line.substr(0, comma)), l) ||
        !parse_double(trim(line.substr(comma + 1)), x)) {
      throw ArgumentError("'" + path + "' line " + std::to_string(lineno) + ": expected two numbers");
    }
    grid.lambda.push_back(l);
    grid.value.push_back(x);
  }
  if (!in_rows) throw ArgumentError("'" + path + "': missing 'lambda,xi' header");
  if (header != nullptr && !comment.empty()) {
    try {
      const json doc = json::parse(comment);
      header->method = doc.value("method", "");
      header->quad_tol = doc.value("quad_tol", 0.0);
      header->r_tol = doc.value("r_tol", 0.0);
      header->grid = doc.value("grid", "");
      header->endpoints_hash = doc.value("endpoints_hash", "");
    } catch (const json::exception& e) {
      throw ArgumentError("'" + path + "': bad header JSON: " + e.what());
    }
  }
  return grid;
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string endpoints_hash(const HermitianOperator& h0, const HermitianOperator& h1) {
  return fnv1a_hex(matrix_json(h0.matrix()) + matrix_json(h1.matrix()));
}

}  // namespace specshift::io
