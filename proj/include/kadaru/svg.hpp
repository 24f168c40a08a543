// SVG output for laid-out signs.
#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "kadaru/layout.hpp"
#include "kadaru/style.hpp"

namespace kadaru {

namespace detail {

// Fixed two-decimal output; identical inputs always give identical text.
inline std::string num(double v) {
  if (std::abs(v) < 0.005) v = 0.0;
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
  return std::string(buf, end);
}

struct Point {
  double x;
  double y;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(Point a, double k) { return {a.x * k, a.y * k}; }

inline std::string points(const std::vector<Point>& pts) {
  std::string out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ' ';
    out += num(pts[i].x) + ',' + num(pts[i].y);
  }
  return out;
}

struct WedgeShape {
  std::vector<std::vector<Point>> heads;
  std::vector<Point> tail;  // empty for a Winkelhaken
  Rect bounds;
};

inline Rect bounds_of(const WedgeShape& w) {
  double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
  auto add = [&](const Point& p) {
    x0 = std::min(x0, p.x);
    y0 = std::min(y0, p.y);
    x1 = std::max(x1, p.x);
    y1 = std::max(y1, p.y);
  };
  for (const auto& h : w.heads) std::for_each(h.begin(), h.end(), add);
  std::for_each(w.tail.begin(), w.tail.end(), add);
  return {x0, y0, x1 - x0, y1 - y0};
}

// Head triangle(s) at `from`, tail tapering to a point at `to`.
inline WedgeShape wedge(Point from, Point to, double head, double line, int heads) {
  const Point delta = to - from;
  const double length = std::hypot(delta.x, delta.y);
  WedgeShape out;
  if (length <= 0) return out;
  const Point dir = delta * (1.0 / length);
  const Point normal{-dir.y, dir.x};
  head = std::min(head, length);
  const double spacing = 0.55 * head;
  for (int k = 0; k < heads; ++k) {
    const Point base = from + dir * (spacing * k);
    if ((base - from).x * dir.x + (base - from).y * dir.y + head > length + 1e-9) break;
    out.heads.push_back({base + normal * (head / 2), base + dir * head, base - normal * (head / 2)});
  }
  const Point neck = from + dir * (0.85 * head);
  out.tail = {neck + normal * (line / 2), to, neck - normal * (line / 2)};
  out.bounds = bounds_of(out);
  return out;
}

inline WedgeShape stroke_shape(const LeafInfo& leaf, const Rect& r, const RenderStyle& style) {
  const double head = std::min({style.stroke_head_size * kCanvasHeight, r.width, r.height});
  const double line = style.stroke_line_width * kCanvasHeight;
  const StrokeModifiers& m = leaf.mods;

  if (leaf.kind == StrokeKind::Winkelhaken) {
    const double a = head * hook_scale(m);
    const Point c{r.center_x(), r.center_y()};
    WedgeShape out;
    out.heads.push_back({{c.x - a / 2, c.y}, {c.x + a / 2, c.y - a / 2}, {c.x + a / 2, c.y + a / 2}});
    out.bounds = bounds_of(out);
    return out;
  }

  Point from, to;
  switch (leaf.kind) {
    case StrokeKind::Horizontal:
      from = {r.x, r.center_y()};
      to = {r.right(), r.center_y()};
      break;
    case StrokeKind::Vertical:
      from = {r.center_x(), r.y};
      to = {r.center_x(), r.bottom()};
      break;
    default: {
      const double angle = style.diagonal_angle * std::numbers::pi / 180.0;
      const double cx = std::cos(angle), sy = std::sin(angle);
      const double half = std::min(r.width / (2 * cx), r.height / (2 * sy));
      const Point c{r.center_x(), r.center_y()};
      const Point dir = leaf.kind == StrokeKind::DownDiagonal ? Point{cx, sy} : Point{cx, -sy};
      from = c - dir * half;
      to = c + dir * half;
      break;
    }
  }
  // Shortening trims a quarter of the length at the head or tail end.
  const Point span = to - from;
  if (m.shorten_head) from = from + span * 0.25;
  if (m.shorten_tail) to = to - span * 0.25;
  if (m.inverted) std::swap(from, to);
  return wedge(from, to, head, line, std::max(1, m.heads));
}

class SvgWriter {
 public:
  SvgWriter(const RenderStyle& style, const std::set<std::size_t>& highlight, std::string id_prefix)
      : style_(style), highlight_(highlight), prefix_(std::move(id_prefix)) {}

  void node(const LayoutNode& n, std::string& out) {
    if (n.leaf) {
      leaf(*n.leaf, n.rect, out);
      return;
    }
    const bool rotates = n.type == SignTree::Type::Adjustment &&
                         n.adjustment == AdjustmentKind::Tenu && !n.children.empty();
    if (rotates) {
      const Rect& r = n.children.front().rect;
      out += "<g class=\"tenu\" transform=\"rotate(-45 " + num(r.center_x()) + ' ' +
             num(r.center_y()) + ")\">\n";
    }
    for (const LayoutNode& c : n.children) node(c, out);
    if (rotates) out += "</g>\n";
  }

 private:
  void leaf(const LeafInfo& info, const Rect& r, std::string& out) {
    const std::string id = prefix_ + "leaf-" + std::to_string(info.index);
    const bool lit = info.mods.highlighted || highlight_.count(info.index);
    const std::string& color = lit ? style_.highlight_color : style_.base_color;
    const double line = style_.stroke_line_width * kCanvasHeight;
    switch (info.kind) {
      case StrokeKind::Void: return;
      case StrokeKind::Cursor: {
        const double half = std::min(r.width, r.height) / 2;
        out += "<g id=\"" + id + "\" class=\"cursor\" stroke=\"" + style_.highlight_color +
               "\" stroke-width=\"" + num(line / 2) + "\">";
        out += "<line x1=\"" + num(r.center_x()) + "\" y1=\"" + num(r.y) + "\" x2=\"" +
               num(r.center_x()) + "\" y2=\"" + num(r.bottom()) + "\"/>";
        out += "<line x1=\"" + num(r.center_x() - half / 4) + "\" y1=\"" + num(r.center_y()) +
               "\" x2=\"" + num(r.center_x() + half / 4) + "\" y2=\"" + num(r.center_y()) +
               "\"/></g>\n";
        return;
      }
      case StrokeKind::Wildcard: {
        const double s = std::min({style_.stroke_head_size * kCanvasHeight, r.width, r.height});
        out += "<g id=\"" + id + "\" class=\"wildcard\" fill=\"none\" stroke=\"" + color +
               "\" stroke-width=\"" + num(line / 2) + "\" stroke-dasharray=\"" + num(line) + "\">";
        out += "<rect x=\"" + num(r.center_x() - s / 2) + "\" y=\"" + num(r.center_y() - s / 2) +
               "\" width=\"" + num(s) + "\" height=\"" + num(s) + "\"/></g>\n";
        return;
      }
      default: break;
    }
    const WedgeShape shape = stroke_shape(info, r, style_);
    out += "<g id=\"" + id + "\" class=\"wedge " + std::string(1, static_cast<char>(info.kind));
    if (lit) out += " highlighted";
    if (info.mods.damaged) out += " damaged";
    out += "\" fill=\"" + color + "\">";
    for (const auto& h : shape.heads) out += "<polygon class=\"head\" points=\"" + points(h) + "\"/>";
    if (!shape.tail.empty()) {
      out += "<polygon class=\"tail\" points=\"" + points(shape.tail) + "\"/>";
    }
    if (info.mods.damaged) {
      const Rect& b = shape.bounds;
      out += "<rect class=\"damage\" x=\"" + num(b.x) + "\" y=\"" + num(b.y) + "\" width=\"" +
             num(b.width) + "\" height=\"" + num(b.height) + "\" fill=\"url(#" + prefix_ +
             "hatch)\"/>";
    }
    out += "</g>\n";
  }

  const RenderStyle& style_;
  const std::set<std::size_t>& highlight_;
  std::string prefix_;
};

}  // namespace detail

/// Hatch pattern used for damaged strokes, as an SVG <defs> block.
inline std::string svg_defs(const RenderStyle& style, const std::string& id_prefix = "") {
  const double s = style.hatch_spacing * kCanvasHeight;
  return "<defs><pattern id=\"" + id_prefix + "hatch\" patternUnits=\"userSpaceOnUse\" width=\"" +
         detail::num(s) + "\" height=\"" + detail::num(s) +
         "\" patternTransform=\"rotate(45)\"><rect width=\"" + detail::num(s) + "\" height=\"" +
         detail::num(s) + "\" fill=\"#ffffff\" fill-opacity=\"0.35\"/><line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"" +
         detail::num(s) + "\" stroke=\"" + style.base_color + "\" stroke-width=\"" +
         detail::num(s / 4) + "\"/></pattern></defs>\n";
}

/// The drawing elements of a sign, without the document wrapper. Leaf
/// groups get ids "<prefix>leaf-<index>".
inline std::string svg_body(const LayoutTree& lt, const RenderStyle& style,
                            const std::set<std::size_t>& highlight = {},
                            const std::string& id_prefix = "") {
  std::string out;
  detail::SvgWriter writer(style, highlight, id_prefix);
  writer.node(lt.root, out);
  return out;
}

/// Complete SVG 1.1 document. Leaves listed in `highlight` (document-order
/// indices) are drawn in the highlight color.
inline std::string render_svg(const LayoutTree& lt, const RenderStyle& style = default_style(),
                              const std::set<std::size_t>& highlight = {}) {
  using detail::num;
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(lt.width) +
         "\" height=\"" + num(lt.height) + "\" viewBox=\"0 0 " + num(lt.width) + ' ' +
         num(lt.height) + "\">\n";
  out += svg_defs(style);
  out += "<g class=\"sign\">\n";
  out += svg_body(lt, style, highlight);
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace kadaru
