#pragma once

#include <functional>
#include <string>
#include <string_view>

namespace stylerl {

// Result of splitting a raw generation into thought and translation segments.
struct ParsedGeneration {
  std::string thought;      // inner text between the tags, byte-for-byte
  std::string translation;  // text after the close tag, outer whitespace stripped
  bool structure_ok = false;
};

inline constexpr std::string_view kThinkOpenTag = "<think>";
inline constexpr std::string_view kThinkCloseTag = "</think>";

// Strict tag grammar: exactly one open tag at the head of the string (leading
// whitespace tolerated and stripped), exactly one close tag after it. Anything
// else -- duplicate tags, close before open, prose before the open tag,
// missing tags -- yields structure_ok = false with both segments empty.
// Never throws.
ParsedGeneration parse_generation(std::string_view raw_text);

// Pluggable token counter; when empty, count_thought_tokens falls back to
// count_whitespace_tokens.
using TokenCounter = std::function<int(std::string_view)>;

// Number of maximal runs of non-whitespace characters (Unicode whitespace).
int count_whitespace_tokens(std::string_view text);

int count_thought_tokens(std::string_view thought,
                         const TokenCounter& counter = nullptr);

// --- Unicode helpers shared by the tokenizer and the judgment parsers ---

// True for the Unicode White_Space code points.
bool is_unicode_space(char32_t cp);

// Decodes one UTF-8 code point starting at `i`, advancing `i` past it.
// Malformed bytes decode as U+FFFD and advance by one byte, so iteration
// always terminates on arbitrary input.
char32_t decode_utf8(std::string_view s, std::size_t& i);

// Strips Unicode whitespace from both ends.
std::string_view strip(std::string_view s);
std::string_view strip_leading(std::string_view s);

}  // namespace stylerl
