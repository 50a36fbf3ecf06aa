#ifndef WSMAN_IO_HPP
#define WSMAN_IO_HPP

// Text and JSON formats for SMAN adjacency matrices and encoding matrices.
//
//   sman <k> <n>          code <k> <n> <p>
//   <n digits 0/1> x k    <n residues> x k
//
// JSON mirrors: {"k":..,"n":..,"rows":[[..],..]} and {"k":..,"n":..,"p":..,"rows":[[..],..]}.

#include <cctype>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "wsman/errors.hpp"
#include "wsman/gf.hpp"
#include "wsman/sman.hpp"

namespace wsman {

namespace detail {

inline std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::string current;
  for (char c : text) {
    if (c == '\n') {
      if (!current.empty() && current.back() == '\r') current.pop_back();
      lines.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) lines.push_back(std::move(current));
  return lines;
}

inline bool blank(const std::string& line) {
  for (unsigned char c : line) {
    if (!std::isspace(c)) return false;
  }
  return true;
}

inline std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

inline std::uint64_t parse_count(const std::string& token, std::size_t line) {
  if (token.empty() || token.size() > 12) throw ParseError(line, "expected a non-negative integer, got '" + token + "'");
  std::uint64_t v = 0;
  for (unsigned char c : token) {
    if (!std::isdigit(c)) throw ParseError(line, "expected a non-negative integer, got '" + token + "'");
    v = v * 10 + (c - '0');
  }
  return v;
}

/// Header plus k data rows; returns the data rows' tokens. Trailing blank lines are allowed.
inline std::vector<std::vector<std::string>> read_table(std::string_view text, const std::string& magic,
                                                        std::size_t header_fields, std::vector<std::uint64_t>& header) {
  const auto lines = split_lines(text);
  if (lines.empty() || blank(lines[0])) throw ParseError(1, "empty input, expected '" + magic + "' header");
  const auto head = tokens(lines[0]);
  if (head.size() != header_fields + 1 || head[0] != magic) {
    throw ParseError(1, "expected header '" + magic + "' followed by " + std::to_string(header_fields) + " integers");
  }
  header.clear();
  for (std::size_t i = 1; i < head.size(); ++i) header.push_back(parse_count(head[i], 1));
  const std::size_t k = header[0];
  const std::size_t n = header[1];
  if (k < 1 || n < k) throw ParseError(1, "dimensions must satisfy n >= k >= 1");

  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t line_no = i + 2;
    if (i + 1 >= lines.size()) throw ParseError(line_no, "missing row " + std::to_string(i + 1) + " of " + std::to_string(k));
    auto row = tokens(lines[i + 1]);
    if (row.size() != n) {
      throw ParseError(line_no, "row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(n));
    }
    rows.push_back(std::move(row));
  }
  for (std::size_t l = k + 1; l < lines.size(); ++l) {
    if (!blank(lines[l])) throw ParseError(l + 1, "unexpected content after the last row");
  }
  return rows;
}

inline bool looks_like_json(std::string_view text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{';
  }
  return false;
}

inline nlohmann::json parse_json(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(1, std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace detail

inline Sman parse_sman_text(std::string_view text) {
  std::vector<std::uint64_t> header;
  const auto rows = detail::read_table(text, "sman", 2, header);
  Sman s(header[0], header[1]);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      const auto& t = rows[i][j];
      if (t != "0" && t != "1") throw ParseError(i + 2, "adjacency entries must be 0 or 1, got '" + t + "'");
      if (t == "1") s.set_link(i, j, true);
    }
  }
  return s;
}

inline std::string serialize_sman_text(const Sman& s) {
  std::string out = "sman " + std::to_string(s.k()) + " " + std::to_string(s.n()) + "\n";
  for (std::size_t i = 0; i < s.k(); ++i) {
    for (std::size_t j = 0; j < s.n(); ++j) {
      if (j > 0) out += ' ';
      out += s.link(i, j) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

inline nlohmann::json sman_to_json(const Sman& s) {
  return {{"k", s.k()}, {"n", s.n()}, {"rows", s.to_rows()}};
}

inline Sman sman_from_json(const nlohmann::json& j) {
  try {
    const auto k = j.at("k").get<std::size_t>();
    const auto n = j.at("n").get<std::size_t>();
    const auto rows = j.at("rows").get<std::vector<std::vector<int>>>();
    if (k < 1 || n < k) throw ParseError(1, "dimensions must satisfy n >= k >= 1");
    if (rows.size() != k) throw ParseError(1, "expected " + std::to_string(k) + " rows");
    for (std::size_t i = 0; i < k; ++i) {
      if (rows[i].size() != n) throw ParseError(1, "row " + std::to_string(i + 1) + " has wrong length");
      for (int v : rows[i]) {
        if (v != 0 && v != 1) throw ParseError(1, "adjacency entries must be 0 or 1");
      }
    }
    return Sman(rows);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(1, std::string("malformed SMAN JSON: ") + e.what());
  }
}

inline std::string serialize_sman_json(const Sman& s) { return sman_to_json(s).dump() + "\n"; }

/// Accepts either format.
inline Sman parse_sman(std::string_view text) {
  if (detail::looks_like_json(text)) return sman_from_json(detail::parse_json(text));
  return parse_sman_text(text);
}

inline FieldMatrix parse_code_text(std::string_view text) {
  std::vector<std::uint64_t> header;
  const auto rows = detail::read_table(text, "code", 3, header);
  if (!FieldPrime::is_prime(header[2]) || header[2] >= (std::uint64_t{1} << 31)) {
    throw ParseError(1, "field size " + std::to_string(header[2]) + " is not a prime below 2^31");
  }
  const FieldPrime field(header[2]);
  FieldMatrix g(field, header[0], header[1]);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      const auto v = detail::parse_count(rows[i][j], i + 2);
      if (v >= field.modulus()) throw ParseError(i + 2, "entry " + rows[i][j] + " outside [0, p)");
      g.set(i, j, static_cast<Residue>(v));
    }
  }
  return g;
}

inline std::string serialize_code_text(const FieldMatrix& g) {
  std::string out = "code " + std::to_string(g.rows()) + " " + std::to_string(g.cols()) + " " +
                    std::to_string(g.field().modulus()) + "\n";
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t j = 0; j < g.cols(); ++j) {
      if (j > 0) out += ' ';
      out += std::to_string(g(i, j));
    }
    out += '\n';
  }
  return out;
}

inline nlohmann::json code_to_json(const FieldMatrix& g) {
  std::vector<std::vector<Residue>> rows(g.rows());
  for (std::size_t i = 0; i < g.rows(); ++i) rows[i].assign(g.row(i).begin(), g.row(i).end());
  return {{"k", g.rows()}, {"n", g.cols()}, {"p", g.field().modulus()}, {"rows", rows}};
}

inline FieldMatrix code_from_json(const nlohmann::json& j) {
  try {
    const auto k = j.at("k").get<std::size_t>();
    const auto n = j.at("n").get<std::size_t>();
    const auto p = j.at("p").get<std::uint64_t>();
    const auto rows = j.at("rows").get<std::vector<std::vector<std::uint64_t>>>();
    if (k < 1 || n < k) throw ParseError(1, "dimensions must satisfy n >= k >= 1");
    if (!FieldPrime::is_prime(p) || p >= (std::uint64_t{1} << 31)) throw ParseError(1, "p must be a prime below 2^31");
    if (rows.size() != k) throw ParseError(1, "expected " + std::to_string(k) + " rows");
    const FieldPrime field(p);
    FieldMatrix g(field, k, n);
    for (std::size_t i = 0; i < k; ++i) {
      if (rows[i].size() != n) throw ParseError(1, "row " + std::to_string(i + 1) + " has wrong length");
      for (std::size_t c = 0; c < n; ++c) {
        if (rows[i][c] >= p) throw ParseError(1, "entry outside [0, p)");
        g.set(i, c, static_cast<Residue>(rows[i][c]));
      }
    }
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(1, std::string("malformed code JSON: ") + e.what());
  }
}

inline std::string serialize_code_json(const FieldMatrix& g) { return code_to_json(g).dump() + "\n"; }

inline FieldMatrix parse_code(std::string_view text) {
  if (detail::looks_like_json(text)) return code_from_json(detail::parse_json(text));
  return parse_code_text(text);
}

}  // namespace wsman

#endif  // WSMAN_IO_HPP
