#include "stylerl/judge/parsers.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>

#include <json.hpp>

#include "stylerl/text.hpp"

namespace stylerl::judge {

namespace {

char ascii_lower(char c) {
  return static_cast<char>(
      std::tolower(static_cast<unsigned char>(c)));
}

bool iequals_at(std::string_view haystack, std::size_t pos,
                std::string_view needle) {
  if (pos + needle.size() > haystack.size()) return false;
  for (std::size_t k = 0; k < needle.size(); ++k) {
    if (ascii_lower(haystack[pos + k]) != ascii_lower(needle[k])) return false;
  }
  return true;
}

// Last case-insensitive occurrence start, or npos.
std::size_t rfind_ci(std::string_view haystack, std::string_view needle) {
  if (needle.empty() || haystack.size() < needle.size()) {
    return std::string_view::npos;
  }
  for (std::size_t pos = haystack.size() - needle.size() + 1; pos-- > 0;) {
    if (iequals_at(haystack, pos, needle)) return pos;
  }
  return std::string_view::npos;
}

std::size_t skip_spaces(std::string_view s, std::size_t i) {
  while (i < s.size()) {
    std::size_t j = i;
    if (!is_unicode_space(decode_utf8(s, j))) break;
    i = j;
  }
  return i;
}

constexpr std::string_view kFullWidthColon = "\xEF\xBC\x9A";  // U+FF1A

// Matches ": N" (either colon, arbitrary whitespace) right after a verdict
// phrase; returns the category or nullopt.
std::optional<int> match_verdict_tail(std::string_view s, std::size_t i) {
  i = skip_spaces(s, i);
  if (i < s.size() && s[i] == ':') {
    ++i;
  } else if (s.compare(i, kFullWidthColon.size(), kFullWidthColon) == 0) {
    i += kFullWidthColon.size();
  } else {
    return std::nullopt;
  }
  i = skip_spaces(s, i);
  if (i >= s.size()) return std::nullopt;
  const char d = s[i];
  if (d < '1' || d > '3') return std::nullopt;
  // Reject "Judgment result: 12" style replies rather than misreading them.
  if (i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1]))) {
    return std::nullopt;
  }
  return d - '0';
}

// Extracts a balanced {...} candidate starting at `open`, honoring JSON string
// literals and escapes. Returns the one-past-the-end offset, or npos.
std::size_t find_balanced_close(std::string_view s, std::size_t open) {
  int depth = 0;
  bool in_string = false;
  bool escaped = false;
  for (std::size_t i = open; i < s.size(); ++i) {
    const char c = s[i];
    if (in_string) {
      if (escaped) {
        escaped = false;
      } else if (c == '\\') {
        escaped = true;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '{') {
      ++depth;
    } else if (c == '}') {
      if (--depth == 0) return i + 1;
    }
  }
  return std::string_view::npos;
}

}  // namespace

FormatJudgment parse_format_judgment(std::string_view reply) {
  constexpr std::string_view kPhrase = "judgment result";
  std::optional<int> verdict;
  std::size_t pos = 0;
  while (pos + kPhrase.size() <= reply.size()) {
    if (iequals_at(reply, pos, kPhrase)) {
      if (const auto v = match_verdict_tail(reply, pos + kPhrase.size())) {
        verdict = v;
      }
      pos += kPhrase.size();
    } else {
      ++pos;
    }
  }
  if (!verdict) {
    throw UnparseableJudgment("no 'Judgment result: N' verdict in reply");
  }
  return FormatJudgment{*verdict};
}

ThoughtJudgment parse_thought_judgment(std::string_view reply) {
  struct Candidate {
    std::string_view phrase;
    ThoughtLabel label;
  };
  // "lack of analysis" also matches inside "a lack of analysis".
  constexpr Candidate kCandidates[] = {
      {"lack of analysis", ThoughtLabel::lack},
      {"slight analysis", ThoughtLabel::slight},
      {"detailed analysis", ThoughtLabel::detailed},
  };
  std::size_t best_pos = std::string_view::npos;
  ThoughtLabel best = ThoughtLabel::lack;
  for (const auto& c : kCandidates) {
    const std::size_t pos = rfind_ci(reply, c.phrase);
    if (pos != std::string_view::npos &&
        (best_pos == std::string_view::npos || pos > best_pos)) {
      best_pos = pos;
      best = c.label;
    }
  }
  if (best_pos == std::string_view::npos) {
    throw UnparseableJudgment("no analysis label in reply");
  }
  return ThoughtJudgment{best};
}

TranslationJudgment parse_translation_judgment(std::string_view reply) {
  using nlohmann::json;
  std::size_t open = reply.find('{');
  while (open != std::string_view::npos) {
    const std::size_t end = find_balanced_close(reply, open);
    if (end != std::string_view::npos) {
      const json j = json::parse(reply.substr(open, end - open),
                                 /*cb=*/nullptr, /*allow_exceptions=*/false);
      if (j.is_object() && j.contains("score") &&
          j.at("score").is_number_integer()) {
        TranslationJudgment out;
        if (j.contains("reason") && j.at("reason").is_string()) {
          out.reason = j.at("reason").get<std::string>();
        }
        const auto raw = j.at("score").get<long long>();
        const auto clamped = std::clamp<long long>(raw, 0, 100);
        out.score = static_cast<int>(clamped);
        out.clamped = clamped != raw;
        return out;
      }
    }
    open = reply.find('{', open + 1);
  }
  throw UnparseableJudgment("no JSON object with an integer 'score' in reply");
}

int parse_grf_score(std::string_view reply) {
  std::optional<int> best;
  std::size_t i = 0;
  while (i < reply.size()) {
    if (std::isdigit(static_cast<unsigned char>(reply[i]))) {
      std::size_t j = i;
      long long value = 0;
      bool overflow = false;
      while (j < reply.size() &&
             std::isdigit(static_cast<unsigned char>(reply[j]))) {
        value = value * 10 + (reply[j] - '0');
        if (value > 1000000) overflow = true;
        ++j;
      }
      if (!overflow && value <= 100) best = static_cast<int>(value);
      i = j;
    } else {
      ++i;
    }
  }
  if (!best) throw UnparseableJudgment("no integer score in reply");
  return *best;
}

}  // namespace stylerl::judge
