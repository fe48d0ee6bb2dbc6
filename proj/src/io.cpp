#include "tauber/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "tauber/error.hpp"

namespace tauber::io {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell_text(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_real(*d);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  return std::get<std::string>(c);
}

std::string json_value(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return std::isfinite(*d) ? format_real(*d) : "null";
  if (const auto* s = std::get_if<std::string>(&c)) return nlohmann::json(*s).dump();
  return cell_text(c);
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw Error("invalid_format", "unknown format " + name);
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", x);
  return buf;
}

void emit_table(std::ostream& os, const Table& t, Format f) {
  for (const auto& row : t.rows) {
    if (row.size() != t.columns.size()) throw Error("schema_mismatch", "emit_table: row width differs from header");
  }
  if (f == Format::csv) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_field(t.columns[i]);
    os << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(cell_text(row[i]));
      os << '\n';
    }
    return;
  }
  os << '[';
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    os << (r ? ",\n " : "\n ") << '{';
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      os << (i ? "," : "") << nlohmann::json(t.columns[i]).dump() << ':' << json_value(t.rows[r][i]);
    }
    os << '}';
  }
  os << (t.rows.empty() ? "]\n" : "\n]\n");
}

void emit_table(const std::string& path, std::ostream& os, const Table& t, Format f) {
  if (path.empty() || path == "-") {
    emit_table(os, t, f);
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("io_error", "cannot open " + path + " for writing");
  emit_table(out, t, f);
  out.flush();
  if (!out) throw Error("io_error", "write to " + path + " failed");
}

}  // namespace tauber::io
