#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace seqtag::utf8 {

// Byte length of the UTF-8 sequence starting at s[pos]. Invalid or truncated
// lead bytes are treated as single-byte units so the scan always advances.
inline std::size_t sequence_length(std::string_view s, std::size_t pos) {
  unsigned char lead = static_cast<unsigned char>(s[pos]);
  std::size_t len = 1;
  if (lead >= 0xF0)
    len = 4;
  else if (lead >= 0xE0)
    len = 3;
  else if (lead >= 0xC0)
    len = 2;
  if (pos + len > s.size()) return 1;
  for (std::size_t i = 1; i < len; ++i) {
    unsigned char c = static_cast<unsigned char>(s[pos + i]);
    if ((c & 0xC0) != 0x80) return 1;
  }
  return len;
}

// Byte length of the first min(max_points, available) code points of s.
inline std::size_t prefix_bytes(std::string_view s, std::size_t max_points) {
  std::size_t pos = 0;
  for (std::size_t n = 0; n < max_points && pos < s.size(); ++n)
    pos += sequence_length(s, pos);
  return pos;
}

inline std::size_t count_points(std::string_view s) {
  std::size_t pos = 0, n = 0;
  while (pos < s.size()) {
    pos += sequence_length(s, pos);
    ++n;
  }
  return n;
}

}  // namespace seqtag::utf8
