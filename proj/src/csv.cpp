#include "fowler/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace fowler {

CsvWriter::CsvWriter(const std::string& path) : out_(path) {
  if (!out_) throw std::runtime_error("CsvWriter: cannot open '" + path + "' for writing");
}

std::string CsvWriter::format(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void CsvWriter::comment(const std::string& key, const std::string& value) {
  out_ << "# " << key << " = " << value << "\n";
}

void CsvWriter::comment(const std::string& key, double value) {
  out_ << "# " << key << " = " << format(value) << "\n";
}

void CsvWriter::header(std::initializer_list<std::string> columns) {
  bool first = true;
  for (const auto& c : columns) {
    if (!first) out_ << ",";
    out_ << c;
    first = false;
  }
  out_ << "\n";
}

void CsvWriter::row(std::initializer_list<double> values) {
  row(std::vector<double>(values));
}

void CsvWriter::row(const std::vector<double>& values) {
  bool first = true;
  for (double v : values) {
    if (!first) out_ << ",";
    out_ << format(v);
    first = false;
  }
  out_ << "\n";
}

void CsvWriter::mixed_row(const std::vector<std::string>& cells) {
  bool first = true;
  for (const auto& c : cells) {
    if (!first) out_ << ",";
    out_ << c;
    first = false;
  }
  out_ << "\n";
}

}  // namespace fowler
