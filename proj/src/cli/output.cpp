#include "output.hpp"

#include <sstream>
#include <stdexcept>

namespace qbc::cli {
namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_cell(const Cell& cell) {
  if (cell.is_null()) return "";
  if (cell.is_string()) return csv_escape(cell.get<std::string>());
  if (cell.is_array()) {
    std::string joined;
    for (std::size_t i = 0; i < cell.size(); ++i) {
      if (i > 0) joined += ';';
      joined += cell[i].is_string() ? cell[i].get<std::string>() : cell[i].dump();
    }
    return csv_escape(joined);
  }
  return cell.dump();
}

}  // namespace

Table::Table(std::string command, std::vector<std::string> columns)
    : command_(std::move(command)), columns_(std::move(columns)) {}

void Table::add(std::vector<Cell> cells) {
  if (cells.size() != columns_.size()) throw std::logic_error("table row has the wrong width");
  rows_.push_back(std::move(cells));
}

std::string Table::render(Format format) const {
  std::ostringstream out;
  if (format == Format::csv) {
    for (std::size_t c = 0; c < columns_.size(); ++c) out << (c ? "," : "") << columns_[c];
    out << '\n';
    for (const auto& row : rows_) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_cell(row[c]);
      out << '\n';
    }
    return out.str();
  }
  Cell doc;
  doc["command"] = command_;
  doc["columns"] = columns_;
  doc["rows"] = Cell::array();
  for (const auto& row : rows_) {
    Cell obj = Cell::object();
    for (std::size_t c = 0; c < row.size(); ++c) obj[columns_[c]] = row[c];
    doc["rows"].push_back(std::move(obj));
  }
  out << doc.dump(2) << '\n';
  return out.str();
}

}  // namespace qbc::cli
