#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace gfactor::io {

/// 17-significant-digit decimal rendering; output files are compared at the
/// decimal-string level, so every number goes through this one function.
std::string format_double(double x);

class Csv {
 public:
  explicit Csv(const std::filesystem::path& path);

  void comment(const std::string& text);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& cells);

 private:
  std::ofstream out_;
  std::size_t columns_ = 0;
};

}  // namespace gfactor::io
