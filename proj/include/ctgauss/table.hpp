#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace ctgauss {

// Column-named result rows with locale-independent serialization. Floats are
// emitted at 17 significant digits so re-parsing is lossless and re-runs are
// byte-comparable.
class Table {
 public:
  using Cell = std::variant<std::int64_t, double, std::string>;

  explicit Table(std::vector<std::string> columns);

  void add_row(std::vector<Cell> cells);

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }
  std::size_t row_count() const noexcept { return rows_.size(); }

  const Cell& cell(std::size_t row, const std::string& column) const;
  double number(std::size_t row, const std::string& column) const;
  std::int64_t integer(std::size_t row, const std::string& column) const;

  std::string to_csv() const;
  std::string to_json() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

std::string format_double(double v);  // 17 significant digits, C locale

}  // namespace ctgauss
