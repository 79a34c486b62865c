#pragma once

#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

#include "qstrobe/errors.hpp"

namespace qstrobe {

// Doubles rendered with 12 significant digits, scientific notation.
std::string format_sig12(double v);

// Minimal deterministic CSV emitter: comma separation, one header row,
// fixed per-type formatting.
class CsvWriter {
 public:
  struct Cell {
    std::string text;
    Cell(double v) : text(format_sig12(v)) {}
    Cell(int v) : text(std::to_string(v)) {}
    Cell(long v) : text(std::to_string(v)) {}
    Cell(std::size_t v) : text(std::to_string(v)) {}
    Cell(const char* v) : text(v) {}
    Cell(const std::string& v) : text(v) {}
  };

  explicit CsvWriter(const std::string& path);

  void header(std::initializer_list<std::string> names);
  void row(std::initializer_list<Cell> cells);

 private:
  std::ofstream out_;
  std::string path_;
};

}  // namespace qstrobe
