#include "ctgauss/table.hpp"

#include <charconv>
#include <stdexcept>

#include "json.hpp"

namespace ctgauss {

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw std::invalid_argument("table needs columns");
}

void Table::add_row(std::vector<Cell> cells) {
  if (cells.size() != columns_.size())
    throw std::invalid_argument("row width must match the header");
  rows_.push_back(std::move(cells));
}

const Table::Cell& Table::cell(std::size_t row, const std::string& column) const {
  for (std::size_t c = 0; c < columns_.size(); ++c)
    if (columns_[c] == column) return rows_.at(row)[c];
  throw std::invalid_argument("unknown column: " + column);
}

double Table::number(std::size_t row, const std::string& column) const {
  const Cell& c = cell(row, column);
  if (const double* d = std::get_if<double>(&c)) return *d;
  if (const std::int64_t* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
  throw std::invalid_argument("column is not numeric: " + column);
}

std::int64_t Table::integer(std::size_t row, const std::string& column) const {
  return std::get<std::int64_t>(cell(row, column));
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {
std::string format_cell(const Table::Cell& c) {
  if (const std::int64_t* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const double* d = std::get_if<double>(&c)) return format_double(*d);
  return std::get<std::string>(c);
}
}  // namespace

std::string Table::to_csv() const {
  std::string out;
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (c) out += ',';
    out += columns_[c];
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_cell(row[c]);
    }
    out += '\n';
  }
  return out;
}

std::string Table::to_json() const {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : rows_) {
    nlohmann::ordered_json obj;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (const std::int64_t* i = std::get_if<std::int64_t>(&row[c]))
        obj[columns_[c]] = *i;
      else if (const double* d = std::get_if<double>(&row[c]))
        obj[columns_[c]] = *d;
      else
        obj[columns_[c]] = std::get<std::string>(row[c]);
    }
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

}  // namespace ctgauss
