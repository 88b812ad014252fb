#include "stylerl/text.hpp"

namespace stylerl {

namespace {

std::size_t count_occurrences(std::string_view haystack, std::string_view needle) {
  std::size_t count = 0;
  std::size_t pos = 0;
  while ((pos = haystack.find(needle, pos)) != std::string_view::npos) {
    ++count;
    pos += needle.size();
  }
  return count;
}

}  // namespace

bool is_unicode_space(char32_t cp) {
  switch (cp) {
    case 0x0009:
    case 0x000A:
    case 0x000B:
    case 0x000C:
    case 0x000D:
    case 0x0020:
    case 0x0085:
    case 0x00A0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

char32_t decode_utf8(std::string_view s, std::size_t& i) {
  const auto byte = [&](std::size_t k) -> unsigned char {
    return static_cast<unsigned char>(s[k]);
  };
  const unsigned char b0 = byte(i);
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
    return 0xFFFD;  // stray continuation or invalid lead byte
  }
  if (i + static_cast<std::size_t>(len) > s.size()) {
    ++i;
    return 0xFFFD;
  }
  for (int k = 1; k < len; ++k) {
    const unsigned char bk = byte(i + static_cast<std::size_t>(k));
    if ((bk & 0xC0) != 0x80) {
      ++i;
      return 0xFFFD;
    }
    cp = (cp << 6) | (bk & 0x3F);
  }
  i += static_cast<std::size_t>(len);
  return cp;
}

std::string_view strip_leading(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t j = i;
    if (!is_unicode_space(decode_utf8(s, j))) break;
    i = j;
  }
  return s.substr(i);
}

std::string_view strip(std::string_view s) {
  s = strip_leading(s);
  // Trailing strip: scan forward remembering the end of the last non-space run,
  // since UTF-8 cannot be decoded backwards cheaply.
  std::size_t end = 0;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t j = i;
    const char32_t cp = decode_utf8(s, j);
    if (!is_unicode_space(cp)) end = j;
    i = j;
  }
  return s.substr(0, end);
}

ParsedGeneration parse_generation(std::string_view raw_text) {
  ParsedGeneration out;
  const std::string_view s = strip_leading(raw_text);
  if (!s.starts_with(kThinkOpenTag)) return out;
  if (count_occurrences(s, kThinkOpenTag) != 1) return out;
  if (count_occurrences(s, kThinkCloseTag) != 1) return out;
  const std::size_t close = s.find(kThinkCloseTag);
  const std::size_t inner_begin = kThinkOpenTag.size();
  if (close < inner_begin) return out;
  out.thought = std::string(s.substr(inner_begin, close - inner_begin));
  out.translation = std::string(strip(s.substr(close + kThinkCloseTag.size())));
  out.structure_ok = true;
  return out;
}

int count_whitespace_tokens(std::string_view text) {
  int tokens = 0;
  bool in_token = false;
  std::size_t i = 0;
  while (i < text.size()) {
    const bool space = is_unicode_space(decode_utf8(text, i));
    if (space) {
      in_token = false;
    } else if (!in_token) {
      in_token = true;
      ++tokens;
    }
  }
  return tokens;
}

int count_thought_tokens(std::string_view thought, const TokenCounter& counter) {
  if (counter) return counter(thought);
  return count_whitespace_tokens(thought);
}

}  // namespace stylerl
