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

#include "idiom/util.hpp"

#include <cctype>
#include <iostream>
#include <mutex>
#include <sstream>

namespace idiom {

namespace {

constexpr char32_t kReplacement = 0xFFFD;

// Decodes one code point starting at s[i]; advances i past it.
char32_t decode_one(std::string_view s, std::size_t& i) {
  const auto byte = [&](std::size_t k) -> unsigned char {
    return static_cast<unsigned char>(s[k]);
  };
  unsigned char b0 = byte(i);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  int len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++i;
    return kReplacement;
  }
  if (i + len > s.size()) {
    ++i;
    return kReplacement;
  }
  for (int k = 1; k < len; ++k) {
    unsigned char bk = byte(i + k);
    if ((bk & 0xC0) != 0x80) {
      ++i;
      return kReplacement;
    }
    cp = (cp << 6) | (bk & 0x3F);
  }
  i += len;
  return cp;
}

}  // namespace

std::u32string utf8_decode(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) out.push_back(decode_one(s, i));
  return out;
}

std::string utf8_encode(char32_t cp) {
  std::string out;
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
  return out;
}

std::string utf8_encode(std::u32string_view cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) out += utf8_encode(cp);
  return out;
}

std::size_t utf8_length(std::string_view s) {
  std::size_t n = 0;
  std::size_t i = 0;
  while (i < s.size()) {
    decode_one(s, i);
    ++n;
  }
  return n;
}

std::vector<std::size_t> utf8_boundaries(std::string_view s) {
  std::vector<std::size_t> out;
  out.push_back(0);
  std::size_t i = 0;
  while (i < s.size()) {
    decode_one(s, i);
    out.push_back(i);
  }
  return out;
}

std::string utf8_substr(std::string_view s, std::size_t cp_start,
                        std::size_t cp_end) {
  const auto bounds = utf8_boundaries(s);
  if (cp_start > cp_end || cp_end >= bounds.size() + 1) {
    if (cp_end > bounds.size() - 1) cp_end = bounds.size() - 1;
    if (cp_start > cp_end) cp_start = cp_end;
  }
  const std::size_t b0 = bounds[cp_start];
  const std::size_t b1 = bounds[cp_end];
  return std::string(s.substr(b0, b1 - b0));
}

bool is_space_cp(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' ||
         cp == U'\f' || cp == U'\v' || cp == 0x00A0 || cp == 0x2009 ||
         cp == 0x200A || cp == 0x2028 || cp == 0x2029 || cp == 0x3000;
}

bool is_alnum_cp(char32_t cp) {
  if (cp < 0x80) {
    return std::isalnum(static_cast<unsigned char>(cp)) != 0;
  }
  // Latin-1 letters, excluding multiplication/division signs.
  if (cp >= 0xC0 && cp <= 0xFF) return cp != 0xD7 && cp != 0xF7;
  // Latin Extended-A.
  if (cp >= 0x100 && cp <= 0x17F) return true;
  return false;
}

char32_t fold_case(char32_t cp) {
  if (cp < 0x80) {
    return static_cast<char32_t>(
        std::tolower(static_cast<unsigned char>(cp)));
  }
  // Latin-1: U+00C0..U+00DE map to +0x20, except the multiplication sign.
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  // Latin Extended-A case pairs.
  if (cp >= 0x100 && cp <= 0x137) return (cp % 2 == 0) ? cp + 1 : cp;
  if (cp >= 0x139 && cp <= 0x148) return (cp % 2 == 1) ? cp + 1 : cp;
  if (cp >= 0x14A && cp <= 0x177) return (cp % 2 == 0) ? cp + 1 : cp;
  if (cp == 0x178) return 0xFF;
  if (cp >= 0x179 && cp <= 0x17E) return (cp % 2 == 1) ? cp + 1 : cp;
  return cp;
}

std::u32string fold_case(std::u32string_view s) {
  std::u32string out(s);
  for (auto& cp : out) cp = fold_case(cp);
  return out;
}

std::string fold_case_utf8(std::string_view s) {
  return utf8_encode(fold_case(utf8_decode(s)));
}

std::string trim(std::string_view s) {
  const std::u32string cps = utf8_decode(s);
  std::size_t b = 0;
  std::size_t e = cps.size();
  while (b < e && is_space_cp(cps[b])) ++b;
  while (e > b && is_space_cp(cps[e - 1])) --e;
  return utf8_encode(std::u32string_view(cps).substr(b, e - b));
}

std::string normalize_whitespace(std::string_view s) {
  const std::u32string cps = utf8_decode(s);
  std::u32string out;
  out.reserve(cps.size());
  bool in_space = true;  // swallow leading whitespace
  for (char32_t cp : cps) {
    if (is_space_cp(cp)) {
      if (!in_space) out.push_back(U' ');
      in_space = true;
    } else {
      out.push_back(cp);
      in_space = false;
    }
  }
  while (!out.empty() && out.back() == U' ') out.pop_back();
  return utf8_encode(out);
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  const std::u32string cps = utf8_decode(s);
  std::u32string cur;
  for (char32_t cp : cps) {
    if (is_space_cp(cp)) {
      if (!cur.empty()) {
        out.push_back(utf8_encode(cur));
        cur.clear();
      }
    } else {
      cur.push_back(cp);
    }
  }
  if (!cur.empty()) out.push_back(utf8_encode(cur));
  return out;
}

bool starts_with(std::u32string_view s, std::u32string_view prefix) {
  return s.size() >= prefix.size() &&
         s.substr(0, prefix.size()) == prefix;
}

std::uint64_t fnv1a64(const void* data, std::size_t n, std::uint64_t seed) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t fnv1a64(std::string_view s) {
  return fnv1a64(s.data(), s.size());
}

std::string to_hex(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[v & 0xF];
    v >>= 4;
  }
  return out;
}

namespace {
std::mutex g_log_mutex;
LogLevel g_log_level = LogLevel::kInfo;
std::string* g_log_sink = nullptr;

const char* level_name(LogLevel level) {
  switch (level) {
    case LogLevel::kDebug: return "DEBUG";
    case LogLevel::kInfo: return "INFO";
    case LogLevel::kWarn: return "WARN";
    case LogLevel::kError: return "ERROR";
  }
  return "?";
}
}  // namespace

void set_log_level(LogLevel level) { g_log_level = level; }

void set_log_capture(std::string* sink) {
  std::lock_guard<std::mutex> lock(g_log_mutex);
  g_log_sink = sink;
}

void log_message(LogLevel level, const std::string& message) {
  if (level < g_log_level && g_log_sink == nullptr) return;
  std::lock_guard<std::mutex> lock(g_log_mutex);
  std::ostringstream line;
  line << "[" << level_name(level) << "] " << message << "\n";
  if (g_log_sink != nullptr) {
    *g_log_sink += line.str();
  } else {
    std::cerr << line.str();
  }
}

}  // namespace idiom
