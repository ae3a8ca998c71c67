#include "qbc/channel_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qbc/errors.hpp"

namespace qbc {
namespace {

using nlohmann::json;

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw ParseError("field '" + field + "': " + what);
}

const json& require(const json& doc, const char* field) {
  const auto it = doc.find(field);
  if (it == doc.end()) field_error(field, "missing");
  return *it;
}

std::size_t as_count(const json& v, const std::string& field, std::size_t min_value) {
  if (!v.is_number_integer() || v.get<long long>() < static_cast<long long>(min_value)) {
    field_error(field, "expected an integer >= " + std::to_string(min_value));
  }
  return v.get<std::size_t>();
}

std::vector<std::size_t> count_list(const json& doc, const char* field, std::size_t min_value) {
  const json& v = require(doc, field);
  if (!v.is_array()) field_error(field, "expected a list of integers");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(as_count(v[i], std::string(field) + "[" + std::to_string(i) + "]", min_value));
  }
  return out;
}

std::vector<std::size_t> parties_or_default(const json& doc, const char* field, std::size_t legs) {
  if (!doc.contains(field)) {
    std::vector<std::size_t> out(legs);
    for (std::size_t i = 0; i < legs; ++i) out[i] = i;
    return out;
  }
  auto out = count_list(doc, field, 0);
  if (out.size() != legs) field_error(field, "length differs from the number of legs");
  return out;
}

SystemLayout make_layout(std::vector<std::size_t> dims, std::vector<std::size_t> parties,
                         const char* field) {
  try {
    return SystemLayout(std::move(dims), std::move(parties));
  } catch (const std::exception& e) {
    field_error(field, e.what());
  }
}

double as_real(const json& v, const std::string& field) {
  if (!v.is_number()) field_error(field, "expected a number");
  return v.get<double>();
}

ComplexMatrix parse_matrix(const json& m, std::size_t rows, std::size_t cols,
                           const std::string& field) {
  if (!m.is_array() || m.size() != rows) {
    field_error(field, "expected " + std::to_string(rows) +
                           " rows (product of out_dims), found " +
                           (m.is_array() ? std::to_string(m.size()) : std::string("non-list")));
  }
  ComplexMatrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto row_field = field + "[" + std::to_string(r) + "]";
    const json& row = m[r];
    if (!row.is_array() || row.size() != cols) {
      field_error(row_field, "expected " + std::to_string(cols) +
                                 " entries (product of in_dims), found " +
                                 (row.is_array() ? std::to_string(row.size()) : std::string("non-list")));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      const auto entry_field = row_field + "[" + std::to_string(c) + "]";
      const json& e = row[c];
      if (!e.is_array() || e.size() != 2) field_error(entry_field, "expected [re, im]");
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          Complex(as_real(e[0], entry_field), as_real(e[1], entry_field));
    }
  }
  return out;
}

std::size_t line_of_byte(std::string_view text, std::size_t byte) {
  const std::size_t end = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + end, '\n'));
}

std::string number(double x) { return json(x).dump(); }

std::string list(const std::vector<std::size_t>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + "]";
}

bool trivial_parties(const SystemLayout& layout) {
  for (std::size_t i = 0; i < layout.legs(); ++i) {
    if (layout.party_of(i) != i) return false;
  }
  return true;
}

}  // namespace

ChannelDocument read_channel(std::string_view text, bool require_complete) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t line = line_of_byte(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("line " + std::to_string(line) + ": " + e.what(), line);
  }
  if (!doc.is_object()) throw ParseError("channel document must be a JSON object");

  auto in_dims = count_list(doc, "in_dims", 1);
  auto out_dims = count_list(doc, "out_dims", 1);
  if (in_dims.empty()) field_error("in_dims", "must list at least one leg");
  if (out_dims.empty()) field_error("out_dims", "must list at least one leg");
  auto in_parties = parties_or_default(doc, "in_parties", in_dims.size());
  auto out_parties = parties_or_default(doc, "out_parties", out_dims.size());
  SystemLayout in = make_layout(std::move(in_dims), std::move(in_parties), "in_dims");
  SystemLayout out = make_layout(std::move(out_dims), std::move(out_parties), "out_dims");

  const json& conns = require(doc, "connections");
  if (!conns.is_array()) field_error("connections", "expected a list");
  std::vector<Connection> connections;
  for (std::size_t i = 0; i < conns.size(); ++i) {
    const auto field = "connections[" + std::to_string(i) + "]";
    const json& c = conns[i];
    if (!c.is_object()) field_error(field, "expected {sender, receiver, ref_dim}");
    for (const char* key : {"sender", "receiver", "ref_dim"}) {
      if (!c.contains(key)) field_error(field + "." + key, "missing");
    }
    connections.push_back({as_count(c["sender"], field + ".sender", 0),
                           as_count(c["receiver"], field + ".receiver", 0),
                           as_count(c["ref_dim"], field + ".ref_dim", 1)});
  }
  ConnectionGraph graph;
  try {
    graph = ConnectionGraph(in.parties(), out.parties(), std::move(connections));
  } catch (const DimensionError& e) {
    field_error("connections", e.what());
  }

  const json& kraus = require(doc, "kraus");
  if (!kraus.is_array() || kraus.empty()) field_error("kraus", "expected a non-empty list of matrices");
  std::vector<ComplexMatrix> ops;
  for (std::size_t k = 0; k < kraus.size(); ++k) {
    ops.push_back(parse_matrix(kraus[k], out.total_dim(), in.total_dim(),
                               "kraus[" + std::to_string(k) + "]"));
  }
  KrausChannel channel(std::move(ops), std::move(in), std::move(out));
  if (require_complete) require_valid(channel);
  return {std::move(channel), std::move(graph)};
}

ChannelDocument read_channel_file(const std::filesystem::path& path, bool require_complete) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ParseError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return read_channel(buffer.str(), require_complete);
}

std::string write_channel(const KrausChannel& ch, const ConnectionGraph& graph) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"in_dims\": " << list(ch.in_layout().dims()) << ",\n";
  out << "  \"out_dims\": " << list(ch.out_layout().dims()) << ",\n";
  if (!trivial_parties(ch.in_layout())) {
    out << "  \"in_parties\": " << list(ch.in_layout().party_of_leg()) << ",\n";
  }
  if (!trivial_parties(ch.out_layout())) {
    out << "  \"out_parties\": " << list(ch.out_layout().party_of_leg()) << ",\n";
  }
  out << "  \"connections\": [";
  for (std::size_t i = 0; i < graph.size(); ++i) {
    out << (i ? ",\n    " : "\n    ") << "{\"sender\": " << graph[i].sender
        << ", \"receiver\": " << graph[i].receiver << ", \"ref_dim\": " << graph[i].ref_dim << "}";
  }
  out << (graph.size() ? "\n  ],\n" : "],\n");
  out << "  \"kraus\": [\n";
  for (std::size_t k = 0; k < ch.kraus_count(); ++k) {
    const auto& a = ch.kraus()[k];
    out << "    [\n";
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      out << "      [";
      for (Eigen::Index c = 0; c < a.cols(); ++c) {
        out << (c ? ", " : "") << '[' << number(a(r, c).real()) << ", " << number(a(r, c).imag())
            << ']';
      }
      out << (r + 1 < a.rows() ? "],\n" : "]\n");
    }
    out << (k + 1 < ch.kraus_count() ? "    ],\n" : "    ]\n");
  }
  out << "  ]\n}\n";
  return out.str();
}

void write_channel_file(const std::filesystem::path& path, const KrausChannel& ch,
                        const ConnectionGraph& graph) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ParseError("cannot write " + path.string());
  file << write_channel(ch, graph);
}

}  // namespace qbc
