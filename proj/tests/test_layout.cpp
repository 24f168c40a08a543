#include <gtest/gtest.h>

#include <cmath>
#include <regex>
#include <string>
#include <vector>

#include "kadaru/layout.hpp"
#include "kadaru/seed.hpp"
#include "kadaru/svg.hpp"
#include "kadaru/typeset.hpp"
#include "support/golden.hpp"
#include "support/trees.hpp"

using namespace kadaru;

namespace {

constexpr double kEps = 1e-6;

LayoutTree lay(std::string_view code) { return layout(parse(code)); }

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++n;
  return n;
}

bool inside(const Rect& inner, const Rect& outer) {
  return inner.x >= outer.x - kEps && inner.y >= outer.y - kEps &&
         inner.right() <= outer.right() + kEps && inner.bottom() <= outer.bottom() + kEps;
}

double lo(const Rect& r, Axis a) { return a == Axis::X ? r.x : r.y; }
double hi(const Rect& r, Axis a) { return a == Axis::X ? r.right() : r.bottom(); }

// Checks containment and stack exclusivity below `n`; returns the first
// violation, or an empty string.
std::string check(const LayoutNode& n, std::vector<const LayoutNode*>& path) {
  for (const LayoutNode* a : path) {
    if (n.leaf && !inside(n.rect, a->rect)) return "leaf " + std::to_string(n.leaf->index) + " escapes";
  }
  const bool stack = n.type == SignTree::Type::Composition &&
                     n.composition != CompositionKind::Superposition;
  if (stack) {
    const Axis axis = n.composition == CompositionKind::HorizontalStack ? Axis::X : Axis::Y;
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      for (std::size_t j = i + 1; j < n.children.size(); ++j) {
        const LayoutNode& a = n.children[i];
        const LayoutNode& b = n.children[j];
        const double overlap = hi(a.rect, axis) - lo(b.rect, axis);
        if (overlap > a.kern_after + b.kern_before + kEps) {
          return "children " + std::to_string(i) + " and " + std::to_string(j) + " overlap";
        }
      }
    }
  }
  path.push_back(&n);
  for (const LayoutNode& c : n.children) {
    if (std::string err = check(c, path); !err.empty()) return err;
  }
  path.pop_back();
  return {};
}

std::string check(const LayoutTree& lt) {
  std::vector<const LayoutNode*> path;
  if (!inside(lt.root.rect, {0, 0, lt.width, lt.height})) return "root escapes canvas";
  return check(lt.root, path);
}

std::string golden_name(const SignRecord& r, const SignVariant& v) {
  return "render/" + std::to_string(r.index) + "-" + v.label + ".svg";
}

}  // namespace

TEST(Layout, LoneVerticalSpansTheCanvas) {
  const LayoutTree lt = lay("v");
  const Rect& r = lt.root.rect;
  EXPECT_DOUBLE_EQ(r.center_x(), lt.width / 2);
  EXPECT_DOUBLE_EQ(r.center_y(), lt.height / 2);
  EXPECT_DOUBLE_EQ(r.height, lt.height - 2 * default_style().canvas_padding * kCanvasHeight);
}

TEST(Layout, TwoVerticalsMirror) {
  const LayoutTree lt = lay("[vv]");
  const Rect& a = lt.root.children[0].rect;
  const Rect& b = lt.root.children[1].rect;
  EXPECT_DOUBLE_EQ(a.width, b.width);
  EXPECT_DOUBLE_EQ(a.height, b.height);
  EXPECT_NEAR(lt.width - a.right(), b.x, kEps);
  EXPECT_LE(a.right(), b.x + kEps);
}

TEST(Layout, ReclaimsRoomFromTheVertical) {
  const LayoutTree lt = lay("[vh]");
  const Rect& v = lt.root.children[0].rect;
  const Rect& h = lt.root.children[1].rect;
  EXPECT_GT(h.width, v.width);
  // Both started from the same even split.
  EXPECT_DOUBLE_EQ(lt.root.children[0].initial_share, lt.root.children[1].initial_share);
}

TEST(Layout, ExpandedChildGetsTwoShares) {
  const LayoutTree lt = lay("[v vE]");
  ASSERT_EQ(lt.root.children.size(), 2u);
  EXPECT_EQ(lt.root.children[1].initial_share, 2 * lt.root.children[0].initial_share);

  const LayoutTree mixed = lay("{hE h cE c}");
  const auto& k = mixed.root.children;
  EXPECT_EQ(k[0].initial_share, 2 * k[1].initial_share);
  EXPECT_EQ(k[2].initial_share, 2 * k[3].initial_share);
}

TEST(Layout, SuperpositionSharesTheBox) {
  const LayoutTree lt = lay("(hv)");
  EXPECT_EQ(lt.root.children[0].rect, lt.root.children[1].rect);
  EXPECT_EQ(lt.root.children[0].rect, lt.root.rect);
}

TEST(Layout, MarginInsets) {
  const LayoutTree lt = lay("vM");
  const Rect& outer = lt.root.rect;
  const Rect& inner = lt.root.children[0].rect;
  const double m = default_style().margin_fraction * std::min(outer.width, outer.height) / 2;
  EXPECT_NEAR(inner.x - outer.x, m, kEps);
  EXPECT_NEAR(outer.bottom() - inner.bottom(), m, kEps);
}

TEST(Layout, TenuRotatesASquare) {
  const LayoutTree lt = lay("W(hv)T");
  const LayoutNode& inner = lt.root.children[0];
  EXPECT_EQ(inner.rotation, 45.0);
  EXPECT_NEAR(inner.rect.width, inner.rect.height, kEps);
  EXPECT_NEAR(inner.rect.center_x(), lt.root.rect.center_x(), kEps);
}

TEST(Layout, CanvasAspect) {
  EXPECT_DOUBLE_EQ(lay("N[vv]").width, kCanvasHeight / 3);
  EXPECT_DOUBLE_EQ(lay("[vv]").width, kCanvasHeight);
  EXPECT_DOUBLE_EQ(lay("L[vv]").width, kCanvasHeight * 1.5);
  EXPECT_DOUBLE_EQ(lay("W[vv]").width, kCanvasHeight * 2);
  EXPECT_DOUBLE_EQ(lay("X[vv]").height, kCanvasHeight);
}

TEST(Layout, Expandability) {
  EXPECT_EQ(expandability(parse("h").root), (Expandability{true, false}));
  EXPECT_EQ(expandability(parse("v").root), (Expandability{false, true}));
  EXPECT_EQ(expandability(parse("d").root), (Expandability{true, true}));
  EXPECT_EQ(expandability(parse("c").root), (Expandability{false, false}));
  EXPECT_EQ(expandability(parse("0").root), (Expandability{true, true}));
  EXPECT_EQ(expandability(parse("*").root), (Expandability{false, false}));
  EXPECT_EQ(expandability(parse("[hc]").root), (Expandability{true, false}));
  EXPECT_EQ(expandability(parse("[hv]R").root), (Expandability{false, false}));
}

TEST(Layout, KeepsLeafStructure) {
  for (const char* code : {"[vh]", "W[{0,[hc],h},v,{h,[v!v2!]M,h},v]", "(c{hhh}T)"}) {
    const SignCode c = parse(code);
    const auto tree_leaves = leaves(c.root);
    const auto laid = layout_leaves(layout(c).root);
    ASSERT_EQ(laid.size(), tree_leaves.size()) << code;
    for (std::size_t i = 0; i < laid.size(); ++i) {
      EXPECT_EQ(laid[i]->leaf->index, i);
      EXPECT_EQ(laid[i]->leaf->kind, tree_leaves[i]->stroke_kind());
    }
  }
}

TEST(Layout, DegenerateCanvas) {
  RenderStyle squeezed = default_style();
  squeezed.canvas_padding = 0.5;
  EXPECT_THROW(layout(parse("v"), squeezed), LayoutError);
}

TEST(Layout, EverySeedVariantSatisfiesTheInvariants) {
  for (const RenderStyle& style : style_presets()) {
    for (const SignRecord& r : seed_catalogue().records()) {
      for (const SignVariant& v : r.variants) {
        const LayoutTree lt = layout(v.code, style);
        EXPECT_EQ(check(lt), "") << style.name << ' ' << r.names.front() << ' ' << v.label;
      }
    }
  }
}

TEST(Layout, RandomTreesSatisfyTheInvariants) {
  gen::Rng rng(11);
  gen::TreeShape shape;
  shape.max_depth = 4;
  int laid = 0;
  for (int i = 0; i < 2000; ++i) {
    SignCode code;
    code.root = gen::random_tree(rng, shape);
    try {
      const LayoutTree lt = layout(code);
      ++laid;
      EXPECT_EQ(check(lt), "") << serialize(code);
    } catch (const LayoutError&) {
    }
  }
  EXPECT_GT(laid, 1500);
}

TEST(Svg, OneGroupPerVisibleLeaf) {
  const std::string svg = render_svg(lay("[vh]"));
  EXPECT_EQ(count(svg, "class=\"wedge "), 2u);
  EXPECT_EQ(count(render_svg(lay("[v0h]")), "class=\"wedge "), 2u);
}

TEST(Svg, MultipleHeads) {
  const std::string svg = render_svg(lay("(h3v)"));
  EXPECT_EQ(count(svg, "class=\"head\""), 4u);
  EXPECT_NE(svg.find("id=\"leaf-0\" class=\"wedge h\""), std::string::npos);
  EXPECT_NE(svg.find("id=\"leaf-1\" class=\"wedge v\""), std::string::npos);
}

TEST(Svg, HighlightedStrokes) {
  const RenderStyle& s = default_style();
  const std::string svg = render_svg(lay("W[{0,[hc],h},v,{h,[v!v2!]M,h},v]"));
  EXPECT_EQ(count(svg, "highlighted\" fill=\"" + s.highlight_color + "\""), 2u);

  const std::string lit = render_svg(lay("[vh]"), s, {1});
  EXPECT_NE(lit.find("id=\"leaf-1\" class=\"wedge h highlighted\""), std::string::npos);
  EXPECT_EQ(lit.find("id=\"leaf-0\" class=\"wedge v highlighted\""), std::string::npos);
}

TEST(Svg, DamageCursorAndWildcard) {
  const std::string svg = render_svg(lay("[v#|*]"));
  EXPECT_EQ(count(svg, "class=\"damage\""), 1u);
  EXPECT_EQ(count(svg, "class=\"cursor\""), 1u);
  EXPECT_EQ(count(svg, "class=\"wildcard\""), 1u);
}

TEST(Svg, InversionSwapsHeadAndTail) {
  EXPECT_NE(render_svg(lay("h")), render_svg(lay("h?")));
}

TEST(Svg, TenuGroupRotates) {
  EXPECT_NE(render_svg(lay("(c{hhh}T)")).find("rotate(-45"), std::string::npos);
}

TEST(Svg, StylesDiffer) {
  const LayoutTree lt = lay("[vh]");
  EXPECT_NE(render_svg(lt, *find_style("bold")), render_svg(lt, *find_style("classic")));
  EXPECT_FALSE(find_style("nope"));
}

TEST(Svg, RepeatedRendersAreIdentical) {
  for (const SignRecord& r : seed_catalogue().records()) {
    for (const SignVariant& v : r.variants) {
      const std::string first = render_svg(layout(v.code));
      for (int i = 0; i < 3; ++i) EXPECT_EQ(render_svg(layout(v.code)), first);
    }
  }
}

TEST(Svg, SeedGoldens) {
  for (const SignRecord& r : seed_catalogue().records()) {
    for (const SignVariant& v : r.variants) {
      EXPECT_TRUE(golden::matches(golden_name(r, v), render_svg(layout(v.code))));
    }
  }
}

TEST(Typeset, DocumentFormat) {
  const auto lines = parse_typeset_document("[vh] (vh) / {vh}\n\n[ v h ] / c / c\n");
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0].words.size(), 2u);
  EXPECT_EQ(lines[0].words[0].signs.size(), 2u);
  EXPECT_FALSE(lines[0].paragraph_break);
  EXPECT_TRUE(lines[1].paragraph_break);
  EXPECT_EQ(serialize(lines[1].words[0].signs[0]), "[vh]");
  EXPECT_THROW(parse_typeset_document("[vh"), TypesetError);
}

TEST(Typeset, ThreeJustifiedRows) {
  const auto lines = parse_typeset_document("[vh] / {vh} (vh)\nW[{vv}{vv}] / c\nc / c / c / [vv]\n");
  const TypesetPage page = typeset_page(lines, default_style());
  std::vector<double> right(3, 0), top(3, 1e18);
  for (const PlacedSign& s : page.signs) {
    right[s.line] = std::max(right[s.line], s.box.right());
    top[s.line] = std::min(top[s.line], s.box.y);
  }
  const double tolerance = default_style().stroke_line_width * kCanvasHeight;
  EXPECT_NEAR(right[0], right[1], tolerance);
  EXPECT_NEAR(right[1], right[2], tolerance);
  EXPECT_LT(top[0], top[1]);
  EXPECT_LT(top[1], top[2]);
  EXPECT_TRUE(golden::matches("typeset.svg", page.svg));
}

TEST(Typeset, WordGapsAreWiderThanSignGaps) {
  const auto lines = parse_typeset_document("c c / c c\n");
  const TypesetPage page = typeset_page(lines, default_style());
  ASSERT_EQ(page.signs.size(), 4u);
  const double in_word = page.signs[1].box.x - page.signs[0].box.right();
  const double between = page.signs[2].box.x - page.signs[1].box.right();
  EXPECT_GT(between, in_word);
}

TEST(Typeset, SingleSignMatchesRender) {
  const auto lines = parse_typeset_document("[vh]\n");
  const TypesetPage page = typeset_page(lines, default_style());
  ASSERT_EQ(page.signs.size(), 1u);
  const double margin = TypesetOptions{}.page_margin * kCanvasHeight;
  EXPECT_DOUBLE_EQ(page.width, kCanvasHeight + 2 * margin);
  EXPECT_DOUBLE_EQ(page.signs[0].box.x, margin);
  // Same drawing as a lone render, up to the leaf id prefix.
  const std::string body = svg_body(lay("[vh]"), default_style(), {}, "l0s0-");
  EXPECT_NE(page.svg.find(body), std::string::npos);
}

TEST(Typeset, NoWordBreaksGivesOneRow) {
  const TypesetPage page = typeset_page(parse_typeset_document("c v h\n"), default_style());
  ASSERT_EQ(page.signs.size(), 3u);
  for (const PlacedSign& s : page.signs) EXPECT_EQ(s.line, 0u);
}

TEST(Typeset, Errors) {
  EXPECT_THROW(typeset_page({}, default_style()), TypesetError);
  TypesetOptions narrow;
  narrow.line_width = 500;
  const auto lines = parse_typeset_document("c c\n");
  EXPECT_THROW(typeset_page(lines, default_style(), narrow), TypesetError);
}

TEST(Typeset, ParagraphRules) {
  TypesetOptions opt;
  opt.paragraph_rules = true;
  const auto lines = parse_typeset_document("c\n\nv\n");
  EXPECT_EQ(count(typeset(lines, default_style(), opt), "class=\"rule\""), 1u);
  EXPECT_EQ(count(typeset(lines, default_style()), "class=\"rule\""), 0u);
}
