#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

namespace kinfront::experiments {

inline constexpr const char* kArtifactName = "kinfront";
inline constexpr const char* kArtifactVersion = "0.1.0";

/// One CSV field. Doubles are written with 17 significant digits.
struct Cell {
  std::string text;
  Cell(double v);
  Cell(int v);
  Cell(long v);
  Cell(std::size_t v);
  Cell(bool v);
  Cell(const char* v) : text(v) {}
  Cell(std::string v) : text(std::move(v)) {}
};

/// CSV file whose first line is "# schema: <name> v<version>; <artifact> <version>".
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::string& schema, int schema_version,
            const std::vector<std::string>& columns,
            const std::vector<std::string>& extra_comments = {});
  void row(std::initializer_list<Cell> cells);
  void row(const std::vector<Cell>& cells);
  const std::filesystem::path& path() const { return path_; }
  void close();

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t width_;
};

}  // namespace kinfront::experiments
