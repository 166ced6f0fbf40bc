#pragma once

#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace stokes_spectra {

enum class Format { Csv, Json };

Format parse_format(const std::string& name);

/// Column-oriented result table rendered as CSV or as a JSON array of objects.
class Table {
 public:
  using Cell = std::variant<std::string, double, long long, bool>;

  Table() = default;
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add(std::vector<Cell> row);
  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return rows_.size(); }

  std::string csv() const;
  nlohmann::json json() const;
  std::string render(Format format) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

/// Shortest round-trip decimal for x.
std::string format_double(double x);

}  // namespace stokes_spectra
