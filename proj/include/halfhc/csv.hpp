#pragma once

// Minimal RFC 4180 reader/writer. Quoted fields may contain commas, quotes
// and line breaks, which matters because whitespace characters are symbols.

#include <string>
#include <string_view>
#include <vector>

#include "halfhc/numeric.hpp"

namespace halfhc::csv {

using Row = std::vector<std::string>;

inline std::vector<Row> parse(std::string_view text) {
  std::vector<Row> rows;
  Row row;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    rows.push_back(std::move(row));
    row.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty()) throw Error("csv: stray quote inside unquoted field");
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        end_field();
        field_started = true;
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;
        end_row();
        break;
      case '\n':
        end_row();
        break;
      default:
        field += c;
        field_started = true;
    }
  }
  if (in_quotes) throw Error("csv: unterminated quoted field");
  if (field_started || !field.empty() || !row.empty()) end_row();
  return rows;
}

inline std::string quote(std::string_view field) {
  bool needs = field.empty() ||
               field.find_first_of(",\"\r\n") != std::string_view::npos ||
               field.front() == ' ' || field.back() == ' ' || field.front() == '\t' ||
               field.back() == '\t';
  if (!needs) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string join(const Row& row) {
  std::string out;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out += ',';
    out += quote(row[i]);
  }
  return out;
}

}  // namespace halfhc::csv
