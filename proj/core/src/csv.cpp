#include "qstrobe/csv.hpp"

#include <cstdio>

namespace qstrobe {

std::string format_sig12(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.11e", v);
  return buffer;
}

CsvWriter::CsvWriter(const std::string& path) : out_(path), path_(path) {
  if (!out_)
    throw ConfigError("cannot open '" + path + "' for writing");
}

void CsvWriter::header(std::initializer_list<std::string> names) {
  bool first = true;
  for (const std::string& name : names) {
    if (!first) out_ << ',';
    out_ << name;
    first = false;
  }
  out_ << '\n';
}

void CsvWriter::row(std::initializer_list<Cell> cells) {
  bool first = true;
  for (const Cell& cell : cells) {
    if (!first) out_ << ',';
    out_ << cell.text;
    first = false;
  }
  out_ << '\n';
  if (!out_)
    throw NumericalError("csv", "write to '" + path_ + "' failed");
}

}  // namespace qstrobe
