#pragma once

#include <optional>
#include <string_view>

namespace stylerl {

// Granularity of the translation-score rubric. points100 is the full 0-100
// band rubric; points3 collapses it to {0,1,2}; points5 to {1..5}.
enum class ScaleKind { points100, points3, points5 };

constexpr std::string_view scale_name(ScaleKind k) {
  switch (k) {
    case ScaleKind::points100:
      return "points100";
    case ScaleKind::points3:
      return "points3";
    case ScaleKind::points5:
      return "points5";
  }
  return "points100";
}

constexpr std::optional<ScaleKind> scale_from_name(std::string_view name) {
  if (name == "points100") return ScaleKind::points100;
  if (name == "points3") return ScaleKind::points3;
  if (name == "points5") return ScaleKind::points5;
  return std::nullopt;
}

}  // namespace stylerl
