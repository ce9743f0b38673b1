#ifndef DECAY_CSV_HPP_
#define DECAY_CSV_HPP_

// CSV tables: '#' metadata lines, one header line, comma-separated rows with
// numbers at 12 significant digits and LF line endings.

#include "decay/core.hpp"

#include <string>
#include <vector>

namespace decay {

/// Input or output file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

std::string format_number(double value);

struct CsvTable {
  std::vector<std::string> metadata;  // without the leading '#'
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
  /// Index of a column, or throws ConfigError naming the missing column.
  std::size_t column(const std::string& name) const;
  std::string render() const;
};

CsvTable parse_csv(const std::string& text);
CsvTable read_csv(const std::string& path);

/// Writes `content` to a temporary file next to `path` and renames it into
/// place. "-" writes to standard output.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace decay

#endif  // DECAY_CSV_HPP_
