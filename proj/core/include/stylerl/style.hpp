#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace stylerl {

// The synthetic action space: a rendering style crossed with a thinking-effort
// level. Six actions total. Styles carry the stylization axis (the judge has a
// soft spot for `classical`); effort controls how much thought text the
// template policy emits.
enum class Style { literal = 0, free = 1, classical = 2 };
enum class Effort { low = 0, high = 1 };

struct StyleAction {
  Style style = Style::literal;
  Effort effort = Effort::low;

  friend bool operator==(const StyleAction&, const StyleAction&) = default;
};

inline constexpr int kNumStyles = 3;
inline constexpr int kNumEfforts = 2;
inline constexpr int kNumStyleActions = kNumStyles * kNumEfforts;

constexpr int action_id(StyleAction a) {
  return static_cast<int>(a.style) * kNumEfforts + static_cast<int>(a.effort);
}

constexpr StyleAction action_from_id(int id) {
  return StyleAction{static_cast<Style>(id / kNumEfforts),
                     static_cast<Effort>(id % kNumEfforts)};
}

constexpr std::array<StyleAction, kNumStyleActions> all_style_actions() {
  std::array<StyleAction, kNumStyleActions> out{};
  for (int id = 0; id < kNumStyleActions; ++id) out[static_cast<std::size_t>(id)] = action_from_id(id);
  return out;
}

std::string_view style_name(Style s);
std::string_view effort_name(Effort e);
std::optional<Style> style_from_name(std::string_view name);
std::optional<Effort> effort_from_name(std::string_view name);

// Feature key under which a synthetic source stores the true quality of one
// action, e.g. "q_free_high".
std::string quality_feature_key(StyleAction a);

}  // namespace stylerl
