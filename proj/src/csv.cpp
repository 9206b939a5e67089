// Copyright 2026 The idiomdetect Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "idiom/csv.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "idiom/errors.hpp"

namespace idiom {

namespace {

// Reads all rows of an RFC-4180-style table with the given delimiter.
// Quoted fields may span lines.
std::vector<std::vector<std::string>> parse_rows(const std::string& text,
                                                 char delimiter) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool row_started = false;

  const auto end_field = [&] {
    row.push_back(field);
    field.clear();
  };
  const auto end_row = [&] {
    end_field();
    rows.push_back(row);
    row.clear();
    row_started = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && field.empty()) {
      in_quotes = true;
      row_started = true;
    } else if (c == delimiter) {
      end_field();
      row_started = true;
    } else if (c == '\n') {
      if (row_started || !field.empty()) end_row();
    } else if (c == '\r') {
      // swallowed; \r\n handled by the \n branch
    } else {
      field.push_back(c);
      row_started = true;
    }
  }
  if (row_started || !field.empty()) end_row();
  return rows;
}

}  // namespace

Table read_delimited_string(const std::string& raw) {
  std::string text = raw;
  // Strip a UTF-8 BOM if present.
  if (text.size() >= 3 && static_cast<unsigned char>(text[0]) == 0xEF &&
      static_cast<unsigned char>(text[1]) == 0xBB &&
      static_cast<unsigned char>(text[2]) == 0xBF) {
    text.erase(0, 3);
  }

  const std::size_t eol = text.find('\n');
  const std::string header_line =
      eol == std::string::npos ? text : text.substr(0, eol);
  const char delimiter =
      header_line.find('\t') != std::string::npos ? '\t' : ',';

  auto rows = parse_rows(text, delimiter);
  Table table;
  table.delimiter = delimiter;
  if (rows.empty()) {
    throw MalformedRowError("empty input: no header row");
  }
  table.header = rows.front();
  table.rows.assign(rows.begin() + 1, rows.end());
  return table;
}

Table read_delimited(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_delimited_string(buf.str());
}

Table read_delimited_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open file: " + path);
  }
  return read_delimited(in);
}

void write_delimited_row(std::ostream& out,
                         const std::vector<std::string>& fields,
                         char delimiter) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << delimiter;
    const std::string& f = fields[i];
    const bool needs_quotes =
        f.find(delimiter) != std::string::npos ||
        f.find('"') != std::string::npos || f.find('\n') != std::string::npos;
    if (needs_quotes) {
      out << '"';
      for (char c : f) {
        if (c == '"') out << '"';
        out << c;
      }
      out << '"';
    } else {
      out << f;
    }
  }
  out << "\n";
}

}  // namespace idiom
