#pragma once

#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

namespace fowler {

/// CSV emitter: '#'-prefixed comment block recording the effective parameters,
/// one header row, then data rows with 17-significant-digit numbers
/// (round-trip exact, byte-stable for identical inputs).
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);

  void comment(const std::string& key, const std::string& value);
  void comment(const std::string& key, double value);
  void header(std::initializer_list<std::string> columns);
  void row(std::initializer_list<double> values);
  void row(const std::vector<double>& values);
  void mixed_row(const std::vector<std::string>& cells);

  static std::string format(double value);

 private:
  std::ofstream out_;
};

}  // namespace fowler
