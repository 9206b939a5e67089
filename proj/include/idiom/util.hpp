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

#ifndef IDIOM_UTIL_HPP_
#define IDIOM_UTIL_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace idiom {

// ---------------------------------------------------------------------------
// UTF-8. All span arithmetic in the library is in Unicode code points; these
// helpers convert between byte strings and code-point sequences.
// ---------------------------------------------------------------------------

// Decodes UTF-8 into code points. Invalid bytes decode to U+FFFD.
std::u32string utf8_decode(std::string_view s);

std::string utf8_encode(std::u32string_view cps);
std::string utf8_encode(char32_t cp);

// Number of code points in a UTF-8 string.
std::size_t utf8_length(std::string_view s);

// Byte offset of every code-point boundary; result has utf8_length(s)+1
// entries, the last one equal to s.size().
std::vector<std::size_t> utf8_boundaries(std::string_view s);

// Substring by code-point range [cp_start, cp_end).
std::string utf8_substr(std::string_view s, std::size_t cp_start,
                        std::size_t cp_end);

// ---------------------------------------------------------------------------
// Character classes and case folding. Covers ASCII, Latin-1 Supplement and
// Latin Extended-A, which is sufficient for the English/Portuguese/Galician
// data this toolkit targets.
// ---------------------------------------------------------------------------

bool is_space_cp(char32_t cp);
bool is_alnum_cp(char32_t cp);

char32_t fold_case(char32_t cp);
std::u32string fold_case(std::u32string_view s);
std::string fold_case_utf8(std::string_view s);

// Trims ASCII/Unicode whitespace from both ends.
std::string trim(std::string_view s);

// Collapses runs of whitespace to single spaces and trims the ends.
std::string normalize_whitespace(std::string_view s);

// Splits on whitespace; empty tokens dropped.
std::vector<std::string> split_words(std::string_view s);

bool starts_with(std::u32string_view s, std::u32string_view prefix);

// ---------------------------------------------------------------------------
// Hashing
// ---------------------------------------------------------------------------

std::uint64_t fnv1a64(std::string_view s);
std::uint64_t fnv1a64(const void* data, std::size_t n,
                      std::uint64_t seed = 1469598103934665603ull);
std::string to_hex(std::uint64_t v);

// ---------------------------------------------------------------------------
// Logging: a minimal stderr logger. Warnings are part of several operation
// contracts (localization fallback, absent metric classes), so the sink can
// be captured in tests.
// ---------------------------------------------------------------------------

enum class LogLevel { kDebug = 0, kInfo = 1, kWarn = 2, kError = 3 };

void set_log_level(LogLevel level);
void log_message(LogLevel level, const std::string& message);

inline void log_debug(const std::string& m) { log_message(LogLevel::kDebug, m); }
inline void log_info(const std::string& m) { log_message(LogLevel::kInfo, m); }
inline void log_warn(const std::string& m) { log_message(LogLevel::kWarn, m); }
inline void log_error(const std::string& m) { log_message(LogLevel::kError, m); }

// Redirects log output to a string buffer; pass nullptr to restore stderr.
void set_log_capture(std::string* sink);

}  // namespace idiom

#endif  // IDIOM_UTIL_HPP_
