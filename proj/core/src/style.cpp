#include "stylerl/style.hpp"

namespace stylerl {

std::string_view style_name(Style s) {
  switch (s) {
    case Style::literal:
      return "literal";
    case Style::free:
      return "free";
    case Style::classical:
      return "classical";
  }
  return "literal";
}

std::string_view effort_name(Effort e) {
  return e == Effort::low ? "low" : "high";
}

std::optional<Style> style_from_name(std::string_view name) {
  if (name == "literal") return Style::literal;
  if (name == "free") return Style::free;
  if (name == "classical") return Style::classical;
  return std::nullopt;
}

std::optional<Effort> effort_from_name(std::string_view name) {
  if (name == "low") return Effort::low;
  if (name == "high") return Effort::high;
  return std::nullopt;
}

std::string quality_feature_key(StyleAction a) {
  std::string key = "q_";
  key += style_name(a.style);
  key += '_';
  key += effort_name(a.effort);
  return key;
}

}  // namespace stylerl
