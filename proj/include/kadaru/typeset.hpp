// Setting lines of signs as a justified text block.
#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kadaru/encoding.hpp"
#include "kadaru/layout.hpp"
#include "kadaru/svg.hpp"

namespace kadaru {

struct TypesetWord {
  std::vector<SignCode> signs;
};

struct TypesetLine {
  std::vector<TypesetWord> words;
  /// Starts a new paragraph (a ruled gap when rules are on).
  bool paragraph_break = false;
};

struct TypesetOptions {
  double sign_height = kCanvasHeight;
  double sign_gap = 0.08;  // fractions of the sign height
  double word_gap = 0.45;
  double line_gap = 0.3;
  double page_margin = 0.15;
  /// Fixed text width; defaults to the widest line at minimum spacing.
  std::optional<double> line_width;
  bool paragraph_rules = false;
};

class TypesetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Position of one placed sign in a typeset page.
struct PlacedSign {
  std::size_t line;
  Rect box;
};

struct TypesetPage {
  double width = 0;
  double height = 0;
  std::vector<PlacedSign> signs;
  std::string svg;
};

/// Lays out the lines and renders them. Every line with more than one sign
/// is justified to the common text width, slack going into the word gaps
/// (or the sign gaps of a one-word line).
inline TypesetPage typeset_page(std::span<const TypesetLine> lines, const RenderStyle& style,
                                const TypesetOptions& opt = {}) {
  if (lines.empty()) throw TypesetError("nothing to typeset");
  using detail::num;
  const double h = opt.sign_height;
  const double scale = h / kCanvasHeight;
  const double sign_gap = opt.sign_gap * h;
  const double word_gap = opt.word_gap * h;
  const double margin = opt.page_margin * h;

  struct Row {
    std::vector<std::vector<double>> widths;
    double natural = 0;
    std::size_t sign_count = 0;
  };
  std::vector<Row> rows;
  double widest = 0;
  for (const TypesetLine& line : lines) {
    Row row;
    std::size_t words = 0;
    for (const TypesetWord& w : line.words) {
      if (w.signs.empty()) continue;
      std::vector<double> widths;
      for (const SignCode& s : w.signs) widths.push_back(aspect_ratio(s.canvas) * h);
      if (words++) row.natural += word_gap;
      for (std::size_t i = 0; i < widths.size(); ++i) row.natural += widths[i] + (i ? sign_gap : 0);
      row.sign_count += widths.size();
      row.widths.push_back(std::move(widths));
    }
    widest = std::max(widest, row.natural);
    rows.push_back(std::move(row));
  }
  const double text_width = opt.line_width.value_or(widest);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].natural > text_width + 1e-9) {
      throw TypesetError("OverfullLine: line " + std::to_string(i + 1) + " needs " +
                         num(rows[i].natural) + " units, only " + num(text_width) + " available");
    }
  }

  TypesetPage page;
  page.width = text_width + 2 * margin;
  std::string body;
  double y = margin;
  for (std::size_t li = 0; li < rows.size(); ++li) {
    const Row& row = rows[li];
    if (li > 0) {
      const double gap = opt.line_gap * h * (lines[li].paragraph_break ? 2.0 : 1.0);
      if (lines[li].paragraph_break && opt.paragraph_rules) {
        const double ry = y + gap / 2;
        body += "<line class=\"rule\" x1=\"" + num(margin) + "\" y1=\"" + num(ry) + "\" x2=\"" +
                num(margin + text_width) + "\" y2=\"" + num(ry) + "\" stroke=\"" +
                style.base_color + "\" stroke-width=\"" +
                num(style.stroke_line_width * h) + "\"/>\n";
      }
      y += gap;
    }
    double extra_word = 0, extra_sign = 0;
    const double slack = text_width - row.natural;
    if (row.widths.size() > 1) {
      extra_word = slack / static_cast<double>(row.widths.size() - 1);
    } else if (row.sign_count > 1) {
      extra_sign = slack / static_cast<double>(row.sign_count - 1);
    }
    double x = margin;
    std::size_t word_index = 0;
    for (const TypesetWord& w : lines[li].words) {
      if (w.signs.empty()) continue;
      if (word_index) x += word_gap + extra_word;
      for (std::size_t si = 0; si < w.signs.size(); ++si) {
        if (si) x += sign_gap + extra_sign;
        const SignCode& sign = w.signs[si];
        const std::string prefix =
            "l" + std::to_string(li) + "s" + std::to_string(page.signs.size()) + "-";
        const LayoutTree lt = layout(sign, style);
        body += "<g class=\"sign\" transform=\"translate(" + num(x) + ' ' + num(y) + ")";
        if (scale != 1.0) body += " scale(" + num(scale) + ")";
        body += "\">\n" + svg_body(lt, style, {}, prefix) + "</g>\n";
        page.signs.push_back({li, {x, y, lt.width * scale, h}});
        x += lt.width * scale;
      }
      ++word_index;
    }
    y += h;
  }
  page.height = y + margin;
  page.svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  page.svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
              num(page.width) + "\" height=\"" + num(page.height) + "\" viewBox=\"0 0 " +
              num(page.width) + ' ' + num(page.height) + "\">\n";
  page.svg += svg_defs(style);
  page.svg += body;
  page.svg += "</svg>\n";
  return page;
}

inline std::string typeset(std::span<const TypesetLine> lines, const RenderStyle& style,
                           const TypesetOptions& opt = {}) {
  return typeset_page(lines, style, opt).svg;
}

/// Reads the plain-text line format: one tablet line per text line, signs
/// separated by whitespace, words by '/'. A blank line starts a new
/// paragraph. Whitespace inside brackets belongs to the sign code.
inline std::vector<TypesetLine> parse_typeset_document(std::string_view text) {
  std::vector<TypesetLine> lines;
  bool pending_break = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    TypesetLine line;
    line.words.emplace_back();
    std::string token;
    int depth = 0;
    auto flush = [&] {
      if (token.empty()) return;
      try {
        line.words.back().signs.push_back(parse(token));
      } catch (const ParseError& e) {
        throw TypesetError("line " + std::to_string(line_no) + ": " + e.what());
      }
      token.clear();
    };
    for (char c : raw) {
      if (c == '[' || c == '{' || c == '(') ++depth;
      if (c == ']' || c == '}' || c == ')') depth = std::max(0, depth - 1);
      if (depth == 0 && (c == ' ' || c == '\t' || c == '\r')) {
        flush();
      } else if (depth == 0 && c == '/') {
        flush();
        line.words.emplace_back();
      } else {
        token += c;
      }
    }
    flush();
    std::erase_if(line.words, [](const TypesetWord& w) { return w.signs.empty(); });
    if (line.words.empty()) {
      if (!lines.empty()) pending_break = true;
      continue;
    }
    line.paragraph_break = pending_break;
    pending_break = false;
    lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace kadaru
