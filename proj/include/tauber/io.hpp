#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace tauber::io {

using Cell = std::variant<std::int64_t, double, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

enum class Format { csv, json };

Format parse_format(const std::string& name);

// Reals in %.11e; CSV quotes fields containing ',', '"' or newlines; JSON is an
// array of objects with keys in column order. LF line endings throughout.
std::string format_real(double x);
void emit_table(std::ostream& os, const Table& t, Format f);

// Writes to path, or to os when path is empty or "-". Throws Error("io_error").
void emit_table(const std::string& path, std::ostream& os, const Table& t, Format f);

}  // namespace tauber::io
