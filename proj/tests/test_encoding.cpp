#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "kadaru/encoding.hpp"
#include "support/trees.hpp"

using namespace kadaru;

namespace {

SignTree h() { return SignTree::stroke(StrokeKind::Horizontal); }
SignTree v() { return SignTree::stroke(StrokeKind::Vertical); }

ParseError parse_error(std::string_view text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no error for '" << text << "'";
  return ParseError(ParseErrorKind::EmptyInput, 0, "");
}

}  // namespace

TEST(Parse, SingleStrokeDefaultsToSquare) {
  const SignCode code = parse("v");
  EXPECT_EQ(code.canvas, CanvasSize::Square);
  EXPECT_EQ(code.root, v());
}

TEST(Parse, Me) {
  EXPECT_EQ(parse("[vh]").root,
            SignTree::compose(CompositionKind::HorizontalStack, {v(), h()}));
}

TEST(Parse, Pa) {
  const SignTree expected = SignTree::compose(
      CompositionKind::Superposition,
      {v(), SignTree::compose(CompositionKind::VerticalStack, {h(), h()})});
  EXPECT_EQ(parse("(v{hh})").root, expected);
}

TEST(Parse, NagWithCommasAndMargin) {
  const SignCode code = parse("W[{0,[hc],h},v,{h,[v!v2!]M,h},v]");
  EXPECT_EQ(code.canvas, CanvasSize::Wide);
  const SignTree& root = code.root;
  ASSERT_TRUE(root.is_composition(CompositionKind::HorizontalStack));
  ASSERT_EQ(root.children().size(), 4u);
  const SignTree& middle = root.children()[2];
  ASSERT_TRUE(middle.is_composition(CompositionKind::VerticalStack));
  const SignTree& margin = middle.children()[1];
  ASSERT_TRUE(margin.is_adjustment());
  EXPECT_EQ(margin.adjustment_kind(), AdjustmentKind::Margin);
  const SignTree& pair = margin.child();
  ASSERT_TRUE(pair.is_composition(CompositionKind::HorizontalStack));
  EXPECT_TRUE(pair.children()[0].modifiers().highlighted);
  EXPECT_EQ(pair.children()[0].modifiers().heads, 1);
  EXPECT_TRUE(pair.children()[1].modifiers().highlighted);
  EXPECT_EQ(pair.children()[1].modifiers().heads, 2);
}

TEST(Parse, CanvasLetters) {
  EXPECT_EQ(parse("N v").canvas, CanvasSize::Narrow);
  EXPECT_EQ(parse("Pv").canvas, CanvasSize::Portrait);
  EXPECT_EQ(parse("Sv").canvas, CanvasSize::Square);
  EXPECT_EQ(parse("Lv").canvas, CanvasSize::Landscape);
  EXPECT_EQ(parse("Wv").canvas, CanvasSize::Wide);
  EXPECT_EQ(parse("  Xv").canvas, CanvasSize::ExtraWide);
  EXPECT_DOUBLE_EQ(aspect_ratio(CanvasSize::Narrow), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(aspect_ratio(CanvasSize::Portrait), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(aspect_ratio(CanvasSize::Square), 1.0);
  EXPECT_DOUBLE_EQ(aspect_ratio(CanvasSize::Landscape), 1.5);
  EXPECT_DOUBLE_EQ(aspect_ratio(CanvasSize::Wide), 2.0);
  EXPECT_DOUBLE_EQ(aspect_ratio(CanvasSize::ExtraWide), 3.0);
}

TEST(Parse, CanvasLetterLaterIsUnknown) {
  const ParseError e = parse_error("[vL]");
  EXPECT_EQ(e.kind(), ParseErrorKind::UnknownCharacter);
  EXPECT_EQ(e.offset(), 2u);
}

TEST(Parse, AdjustmentsWrapInnermostFirst) {
  const SignTree root = parse("[hh]TE").root;
  ASSERT_TRUE(root.is_adjustment());
  EXPECT_EQ(root.adjustment_kind(), AdjustmentKind::Expand);
  ASSERT_TRUE(root.child().is_adjustment());
  EXPECT_EQ(root.child().adjustment_kind(), AdjustmentKind::Tenu);
  EXPECT_TRUE(root.child().child().is_composition(CompositionKind::HorizontalStack));
}

TEST(Parse, ModifiersCommute) {
  EXPECT_EQ(parse("v'\"").root, parse("v\"'").root);
  EXPECT_EQ(parse("h#!2").root, parse("h2!#").root);
}

TEST(Parse, ModifierFields) {
  const StrokeModifiers m = parse("d3'\"#!?").root.modifiers();
  EXPECT_TRUE(m.shorten_head);
  EXPECT_TRUE(m.shorten_tail);
  EXPECT_TRUE(m.damaged);
  EXPECT_TRUE(m.highlighted);
  EXPECT_TRUE(m.inverted);
  EXPECT_EQ(m.heads, 3);
}

TEST(Parse, LastHeadCountWinsWithWarning) {
  std::vector<ParseWarning> warnings;
  const SignCode code = parse("v23", &warnings);
  EXPECT_EQ(code.root.modifiers().heads, 3);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_EQ(warnings[0].offset, 2u);
}

TEST(Parse, HeadCountIgnoredOnHooksWithWarning) {
  for (const char* text : {"c2", "02", "*3", "|2"}) {
    std::vector<ParseWarning> warnings;
    const SignCode code = parse(text, &warnings);
    EXPECT_EQ(code.root.modifiers().heads, 1) << text;
    EXPECT_EQ(warnings.size(), 1u) << text;
  }
}

TEST(Parse, CursorAnywhere) {
  const SignTree root = parse("[h|c]").root;
  EXPECT_TRUE(root.children()[1].is_stroke(StrokeKind::Cursor));
}

TEST(Parse, SeveralTopLevelNodesFormAHorizontalStack) {
  EXPECT_EQ(parse("v h").root, parse("[vh]").root);
}

TEST(Parse, EmptyCompositionsAreAccepted) {
  const SignTree root = parse("[]").root;
  EXPECT_TRUE(root.is_composition(CompositionKind::HorizontalStack));
  EXPECT_TRUE(root.children().empty());
}

TEST(ParseErrors, UnclosedBracketReportsOpener) {
  const ParseError e = parse_error("[vh");
  EXPECT_EQ(e.kind(), ParseErrorKind::UnbalancedBracket);
  EXPECT_EQ(e.offset(), 0u);
}

TEST(ParseErrors, MismatchedCloser) {
  const ParseError e = parse_error("[v{h]}");
  EXPECT_EQ(e.kind(), ParseErrorKind::UnbalancedBracket);
  EXPECT_EQ(e.offset(), 4u);
}

TEST(ParseErrors, StrayCloser) {
  const ParseError e = parse_error("vh)");
  EXPECT_EQ(e.kind(), ParseErrorKind::UnbalancedBracket);
  EXPECT_EQ(e.offset(), 2u);
}

TEST(ParseErrors, UnknownCharacter) {
  const ParseError e = parse_error("[vq]");
  EXPECT_EQ(e.kind(), ParseErrorKind::UnknownCharacter);
  EXPECT_EQ(e.offset(), 2u);
}

TEST(ParseErrors, DanglingModifiers) {
  for (auto [text, offset] : std::vector<std::pair<std::string, std::size_t>>{
           {"'v", 0}, {"[ 2v]", 2}, {"E", 0}, {"v ,'", 3}, {"[v]'", 3}, {"vT'", 2}}) {
    const ParseError e = parse_error(text);
    EXPECT_EQ(e.kind(), ParseErrorKind::DanglingModifier) << text;
    EXPECT_EQ(e.offset(), offset) << text;
  }
}

TEST(ParseErrors, EmptyInput) {
  for (const char* text : {"", "   ", ",,", "W", " L , "}) {
    EXPECT_EQ(parse_error(text).kind(), ParseErrorKind::EmptyInput) << text;
  }
}

TEST(Serialize, StripsDelimiters) { EXPECT_EQ(serialize(parse("[ v , h ]")), "[vh]"); }

TEST(Serialize, PaIsAFixedPoint) { EXPECT_EQ(serialize(parse("(v{hh})")), "(v{hh})"); }

TEST(Serialize, ModifierOrderAndCanvas) {
  EXPECT_EQ(serialize(parse("L[h!#?\"'2]")), "L[h2'\"?#!]");
  EXPECT_EQ(serialize(parse("S[vh]")), "[vh]");
  EXPECT_EQ(serialize(parse("{hh}TM")), "{hh}TM");
}

TEST(Leaves, DocumentOrder) {
  const SignTree root = parse("[vh]").root;
  const auto ls = leaves(root);
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(ls[0], &root.children()[0]);
  EXPECT_EQ(ls[1], &root.children()[1]);
}

TEST(Leaves, Ir) {
  const SignTree root = parse("{d([vvv]u)}").root;
  std::string kinds;
  for (const SignTree* l : leaves(root)) kinds += static_cast<char>(l->stroke_kind());
  EXPECT_EQ(kinds, "dvvvu");
}

TEST(Leaves, SingleLeaf) {
  const SignTree root = parse("v").root;
  ASSERT_EQ(leaves(root).size(), 1u);
  EXPECT_EQ(leaves(root)[0], &root);
}

TEST(RoundTrip, RandomTrees) {
  gen::Rng rng(11);
  gen::TreeShape shape;
  for (int i = 0; i < 3000; ++i) {
    const SignTree t = gen::random_tree(rng, shape);
    SignCode code{static_cast<CanvasSize>("NPSLWX"[i % 6]), t};
    const std::string text = serialize(code);
    const SignCode back = parse(text);
    EXPECT_EQ(back, code) << text;
    EXPECT_EQ(serialize(back), text);
  }
}

TEST(RoundTrip, DelimiterInsensitivity) {
  gen::Rng rng(12);
  gen::TreeShape shape;
  for (int i = 0; i < 1000; ++i) {
    const SignTree t = gen::random_tree(rng, shape);
    const std::string text = serialize(t);
    std::string spaced;
    for (std::size_t k = 0; k < text.size(); ++k) {
      spaced += text[k];
      const bool node_end = k + 1 < text.size() &&
                            (std::string("[{(hvduc0*|").find(text[k + 1]) != std::string::npos);
      if (node_end && gen::chance(rng, 0.5)) spaced += gen::chance(rng, 0.5) ? ", " : " ";
    }
    EXPECT_EQ(parse(spaced).root, t) << spaced;
  }
}

TEST(ParseTotality, FuzzedStringsParseOrFailWithOffset) {
  gen::Rng rng(13);
  for (int i = 0; i < 20000; ++i) {
    const std::string text = gen::random_text(rng, 24);
    try {
      const SignCode code = parse(text);
      EXPECT_EQ(parse(serialize(code)), code) << text;
    } catch (const ParseError& e) {
      EXPECT_LE(e.offset(), text.size()) << text;
    }
  }
}
