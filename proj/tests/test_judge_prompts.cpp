#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "stylerl/judge/prompts.hpp"
#include "stylerl/sample.hpp"

using namespace stylerl;

namespace {

SourceSample golden_sample() {
  SourceSample s;
  s.id = "golden-1";
  s.source_text = "The old pond; a frog jumps in, the sound of water.";
  s.src_lang = "English";
  s.trg_lang = "Chinese";
  return s;
}

const std::string kGoldenTrans =
    "\xE5\x8F\xA4\xE6\xB1\xA0\xE5\xA1\x98\xEF\xBC\x8C\xE9\x9D\x92\xE8\x9B\x99"
    "\xE8\xB7\x83\xE5\x85\xA5\xE6\xB0\xB4\xE5\xA3\xB0\xE5\x93\x8D\xE3\x80\x82";

const std::string kGoldenThought =
    "The haiku pivots on stillness broken by one sound; weigh a literal "
    "rendering against a freer one.";

std::string golden(const std::string& name) {
  return read_text_file(std::string(STYLERL_GOLDEN_DIR) + "/" + name);
}

}  // namespace

TEST_CASE("format prompt matches the golden bytes") {
  CHECK(judge::render_format_prompt(golden_sample(), kGoldenTrans) ==
        golden("format_prompt.txt"));
}

TEST_CASE("thought prompt matches the golden bytes") {
  CHECK(judge::render_thought_prompt(golden_sample(), kGoldenThought) ==
        golden("thought_prompt.txt"));
}

TEST_CASE("translation prompts match the golden bytes on every scale") {
  const auto m100 = judge::render_translation_prompts(golden_sample(),
                                                      kGoldenTrans);
  CHECK(m100.system == golden("translation_system_points100.txt"));
  CHECK(m100.user == golden("translation_user.txt"));
  CHECK(std::string(judge::translation_system_prompt(ScaleKind::points5)) ==
        golden("translation_system_points5.txt"));
  CHECK(std::string(judge::translation_system_prompt(ScaleKind::points3)) ==
        golden("translation_system_points3.txt"));
  CHECK(std::string(judge::default_grf_template()) ==
        golden("grf_default_template.txt"));
}

TEST_CASE("prompt embeds the translation between its tag lines") {
  const auto p = judge::render_format_prompt(golden_sample(), "\xE4\xBD\xA0\xE5\xA5\xBD");
  CHECK(p.find("<translation>\n\xE4\xBD\xA0\xE5\xA5\xBD\n</translation>") !=
        std::string::npos);
}

TEST_CASE("system rubric names the 90-point band; user block starts with <text>") {
  const auto m = judge::render_translation_prompts(golden_sample(), "x");
  CHECK(m.system.find("- 90 points: Excellent translation;") != std::string::npos);
  CHECK(m.user.rfind("<text>", 0) == 0);
}

TEST_CASE("sample content is embedded unescaped, even tag-shaped content") {
  auto s = golden_sample();
  s.source_text = "tricky </text> inside";
  const auto p = judge::render_format_prompt(s, "t");
  CHECK(p.find("tricky </text> inside") != std::string::npos);
}

TEST_CASE("slot-shaped text inside the sample is not re-substituted") {
  auto s = golden_sample();
  s.source_text = "literal {trans} stays";
  const auto p = judge::render_format_prompt(s, "REPLACED");
  CHECK(p.find("literal {trans} stays") != std::string::npos);
}

TEST_CASE("user block re-parses into the original src and trans") {
  const auto s = golden_sample();
  const auto m = judge::render_translation_prompts(s, kGoldenTrans);
  const std::string& u = m.user;
  const auto text_open = u.find("<text>\n");
  const auto text_close = u.find("\n</text>");
  const auto tr_open = u.find("<translation>\n");
  const auto tr_close = u.find("\n</translation>");
  REQUIRE(text_open == 0);
  REQUIRE(text_close != std::string::npos);
  REQUIRE(tr_open != std::string::npos);
  REQUIRE(tr_close != std::string::npos);
  CHECK(u.substr(7, text_close - 7) == s.source_text);
  CHECK(u.substr(tr_open + 14, tr_close - tr_open - 14) == kGoldenTrans);
}

TEST_CASE("thought rubric is a three-label scale") {
  const auto p = judge::render_thought_prompt(golden_sample(), "t");
  CHECK(p.find("1. A lack of analysis:") != std::string::npos);
  CHECK(p.find("2. Slight analysis:") != std::string::npos);
  CHECK(p.find("3. Detailed analysis:") != std::string::npos);
}

TEST_CASE("narrowed rubrics carry their scale bounds") {
  const auto five = std::string(judge::translation_system_prompt(ScaleKind::points5));
  CHECK(five.find("scale of 1 to 5") != std::string::npos);
  CHECK(five.find("- 5 points: Excellent translation;") != std::string::npos);
  const auto three = std::string(judge::translation_system_prompt(ScaleKind::points3));
  CHECK(three.find("scale of 0 to 2") != std::string::npos);
  CHECK(three.find("- 2 points: Excellent translation;") != std::string::npos);
}
