#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace qbc::cli {

using Cell = nlohmann::ordered_json;

enum class Format { csv, json };

// Fixed-column result table. Numbers are written in shortest round-trip
// form; array cells become ';'-joined lists in CSV.
class Table {
 public:
  Table(std::string command, std::vector<std::string> columns);

  void add(std::vector<Cell> cells);
  std::size_t rows() const { return rows_.size(); }
  std::string render(Format format) const;

 private:
  std::string command_;
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

}  // namespace qbc::cli
