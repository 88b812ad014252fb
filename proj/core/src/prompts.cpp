#include "stylerl/judge/prompts.hpp"

#include <array>

namespace stylerl::judge {

namespace {

constexpr std::string_view kFormatPrompt =
    R"(A translation question requires translating a given text from [src lang] into [trg lang].

The given text is as follows:
<text>
{src}
</text>

Someone did this translation task and the translation result is as follows:
<translation>
{trans}
</translation>

Please judge whether the translation result belongs to the following situations:
1. It contains only the translation result.
2. It contains the translation result and the explanation.
3. It does not contain the translation result, but only the explanation.

Please directly output your judgment result, such as: "Judgment result: 1", "Judgment result: 2" or "Judgment result: 3")";

constexpr std::string_view kThoughtPrompt =
    R"(A translation question requires translating a given text from [src lang] into [trg lang].

The given text is as follows:
<text>
{src}
</text>

Someone did this translation question, and began to think how to translate:
<think>
{think}
</think>

Please judge whether there is a detailed analysis of the given text in this thinking process:
1. A lack of analysis: Only very shallow thinking was done, and no detailed analysis of the given text was carried out.
2. Slight analysis: The given text was analyzed in detail, and how to translate it was discussed in detail.
3. Detailed analysis: The given text was analyzed in detail, and various translation possibilities were discussed in detail, and trade-offs were made.

Please directly output your judgment results, such as: "a lack of analysis", "slight analysis" or "detailed analysis")";

constexpr std::string_view kTranslationSystem100 =
    R"(Please evaluate the following Chinese translation of an English text. Rate the translation on a scale of 0 to 100, where:
- 10 points: Poor translation; the text is somewhat understandable but contains significant errors and awkward phrasing that greatly hinder comprehension for a Chinese reader.
- 30 points: Fair translation; the text conveys the basic meaning but lacks fluency and contains several awkward phrases or inaccuracies, making it challenging for a Chinese reader to fully grasp the intended message.
- 50 points: Good translation; the text is mostly fluent and conveys the original meaning well, but may have minor awkwardness or slight inaccuracies that could confuse a Chinese reader.
- 70 points: Very good translation; the text is smooth and natural, effectively conveying the intended meaning, but may still have minor issues that could slightly affect understanding for a Chinese reader.
- 90 points: Excellent translation; the text is fluent and natural, conveying the original meaning clearly and effectively, with no significant issues that would hinder understanding for a Chinese reader.

Please provide the reason first, followed by a score. Format your evaluation in the JSON structure below:
{"reason": "reason for the score", "score": int})";

// Narrowed rubrics reuse the band descriptions of the full rubric; only the
// scale wording changes.
constexpr std::string_view kTranslationSystem5 =
    R"(Please evaluate the following Chinese translation of an English text. Rate the translation on a scale of 1 to 5, where:
- 1 point: Poor translation; the text is somewhat understandable but contains significant errors and awkward phrasing that greatly hinder comprehension for a Chinese reader.
- 2 points: Fair translation; the text conveys the basic meaning but lacks fluency and contains several awkward phrases or inaccuracies, making it challenging for a Chinese reader to fully grasp the intended message.
- 3 points: Good translation; the text is mostly fluent and conveys the original meaning well, but may have minor awkwardness or slight inaccuracies that could confuse a Chinese reader.
- 4 points: Very good translation; the text is smooth and natural, effectively conveying the intended meaning, but may still have minor issues that could slightly affect understanding for a Chinese reader.
- 5 points: Excellent translation; the text is fluent and natural, conveying the original meaning clearly and effectively, with no significant issues that would hinder understanding for a Chinese reader.

Please provide the reason first, followed by a score. Format your evaluation in the JSON structure below:
{"reason": "reason for the score", "score": int})";

constexpr std::string_view kTranslationSystem3 =
    R"(Please evaluate the following Chinese translation of an English text. Rate the translation on a scale of 0 to 2, where:
- 0 points: Poor translation; the text conveys at most the basic meaning but contains significant errors, awkward phrasing, or inaccuracies that hinder comprehension for a Chinese reader.
- 1 point: Good translation; the text is mostly fluent and conveys the original meaning well, but may have minor awkwardness or slight inaccuracies that could confuse a Chinese reader.
- 2 points: Excellent translation; the text is fluent and natural, conveying the original meaning clearly and effectively, with no significant issues that would hinder understanding for a Chinese reader.

Please provide the reason first, followed by a score. Format your evaluation in the JSON structure below:
{"reason": "reason for the score", "score": int})";

constexpr std::string_view kTranslationUser =
    R"(<text>
{src}
</text>
<translation>
{trans}
</translation>)";

// Stand-in wording for the general-rating slot; see header note.
constexpr std::string_view kDefaultGrf =
    R"(Score the following translation from [src lang] to [trg lang] on a scale from 0 to 100, where 0 means "no meaning preserved" and 100 means "perfect meaning and grammar".

[src lang] source:
{src}

[trg lang] translation:
{trans}

Score: )";

struct Slot {
  std::string_view marker;
  std::string_view value;
};

}  // namespace

std::string render_template(std::string_view tmpl, const SourceSample& sample,
                            std::string_view translation,
                            std::string_view thought) {
  const std::array<Slot, 5> slots = {{
      {"{src}", sample.source_text},
      {"{trans}", translation},
      {"{think}", thought},
      {"[src lang]", sample.src_lang},
      {"[trg lang]", sample.trg_lang},
  }};
  std::string out;
  out.reserve(tmpl.size() + sample.source_text.size() + translation.size());
  std::size_t i = 0;
  while (i < tmpl.size()) {
    bool matched = false;
    for (const auto& slot : slots) {
      if (tmpl.compare(i, slot.marker.size(), slot.marker) == 0) {
        out += slot.value;
        i += slot.marker.size();
        matched = true;
        break;
      }
    }
    if (!matched) {
      out += tmpl[i];
      ++i;
    }
  }
  return out;
}

std::string render_format_prompt(const SourceSample& sample,
                                 std::string_view translation) {
  return render_template(kFormatPrompt, sample, translation);
}

std::string render_thought_prompt(const SourceSample& sample,
                                  std::string_view thought) {
  return render_template(kThoughtPrompt, sample, /*translation=*/{}, thought);
}

PromptMessages render_translation_prompts(const SourceSample& sample,
                                          std::string_view translation,
                                          ScaleKind scale) {
  PromptMessages m;
  m.system = std::string(translation_system_prompt(scale));
  m.user = render_template(kTranslationUser, sample, translation);
  return m;
}

std::string_view format_prompt_template() { return kFormatPrompt; }
std::string_view thought_prompt_template() { return kThoughtPrompt; }

std::string_view translation_system_prompt(ScaleKind scale) {
  switch (scale) {
    case ScaleKind::points100:
      return kTranslationSystem100;
    case ScaleKind::points3:
      return kTranslationSystem3;
    case ScaleKind::points5:
      return kTranslationSystem5;
  }
  return kTranslationSystem100;
}

std::string_view translation_user_template() { return kTranslationUser; }
std::string_view default_grf_template() { return kDefaultGrf; }

}  // namespace stylerl::judge
