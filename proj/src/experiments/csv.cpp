#include "kinfront/experiments/csv.hpp"

#include <stdexcept>

#include "kinfront/format.hpp"

namespace kinfront::experiments {

Cell::Cell(double v) : text(format_double(v)) {}
Cell::Cell(int v) : text(std::to_string(v)) {}
Cell::Cell(long v) : text(std::to_string(v)) {}
Cell::Cell(std::size_t v) : text(std::to_string(v)) {}
Cell::Cell(bool v) : text(v ? "true" : "false") {}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::string& schema,
                     int schema_version, const std::vector<std::string>& columns,
                     const std::vector<std::string>& extra_comments)
    : path_(path), out_(path), width_(columns.size()) {
  if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out_ << "# schema: " << schema << " v" << schema_version << "; " << kArtifactName << ' '
       << kArtifactVersion << '\n';
  for (const std::string& c : extra_comments) out_ << "# " << c << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
  out_ << '\n';
}

void CsvWriter::row(std::initializer_list<Cell> cells) {
  row(std::vector<Cell>(cells));
}

void CsvWriter::row(const std::vector<Cell>& cells) {
  if (cells.size() != width_) throw std::logic_error("csv row width mismatch in " + path_.string());
  for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i].text;
  out_ << '\n';
}

void CsvWriter::close() {
  out_.close();
  if (out_.fail()) throw std::runtime_error("failed writing " + path_.string());
}

}  // namespace kinfront::experiments
