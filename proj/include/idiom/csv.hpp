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

#ifndef IDIOM_CSV_HPP_
#define IDIOM_CSV_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace idiom {

// A parsed delimited table. The delimiter is sniffed from the header line:
// tab if one is present there, comma otherwise. Fields may be quoted with
// double quotes; quoted fields may contain the delimiter, newlines and
// doubled quotes.
struct Table {
  char delimiter = ',';
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

Table read_delimited(std::istream& in);
Table read_delimited_string(const std::string& text);
Table read_delimited_file(const std::string& path);

// Writes one row, quoting fields that need it.
void write_delimited_row(std::ostream& out,
                         const std::vector<std::string>& fields,
                         char delimiter = ',');

}  // namespace idiom

#endif  // IDIOM_CSV_HPP_
