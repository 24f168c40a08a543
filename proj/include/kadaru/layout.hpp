// Space assignment for drawing a sign.
//
// The root gets the whole canvas. Superpositions hand their full box to
// every child; stacks split theirs along the stacking axis, first evenly
// (an E child counts twice), then, if some child can grow along the axis,
// the room the others leave unused is taken back and shared out among the
// ones that can grow.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kadaru/encoding.hpp"
#include "kadaru/style.hpp"

namespace kadaru {

inline constexpr double kCanvasHeight = 1000.0;

struct Rect {
  double x = 0;
  double y = 0;
  double width = 0;
  double height = 0;

  double right() const noexcept { return x + width; }
  double bottom() const noexcept { return y + height; }
  double center_x() const noexcept { return x + width / 2; }
  double center_y() const noexcept { return y + height / 2; }

  friend bool operator==(const Rect&, const Rect&) = default;
};

enum class Axis { X, Y };

struct Expandability {
  bool horizontal = false;
  bool vertical = false;

  bool along(Axis axis) const noexcept { return axis == Axis::X ? horizontal : vertical; }
  friend bool operator==(const Expandability&, const Expandability&) = default;
};

struct LeafInfo {
  StrokeKind kind;
  StrokeModifiers mods;
  std::size_t index;  // document order, voids included
};

struct LayoutNode {
  SignTree::Type type = SignTree::Type::Leaf;
  CompositionKind composition = CompositionKind::HorizontalStack;
  AdjustmentKind adjustment = AdjustmentKind::Expand;
  /// Box given to this node, in the frame of its nearest rotated ancestor.
  Rect rect;
  /// Length along the parent stack's axis before any space was reclaimed;
  /// zero when the parent is not a stack.
  double initial_share = 0;
  /// Reclaimable room at each end along the parent stack's axis.
  double kern_before = 0;
  double kern_after = 0;
  /// Accumulated counter-clockwise rotation, degrees.
  double rotation = 0;
  std::optional<LeafInfo> leaf;
  std::vector<LayoutNode> children;
};

struct LayoutTree {
  CanvasSize canvas = CanvasSize::Square;
  double width = kCanvasHeight;
  double height = kCanvasHeight;
  LayoutNode root;
};

class LayoutError : public std::runtime_error {
 public:
  explicit LayoutError(const std::string& what) : std::runtime_error("DegenerateCanvas: " + what) {}
};

/// Which directions a node can grow in.
inline Expandability expandability(const SignTree& node) {
  switch (node.type()) {
    case SignTree::Type::Leaf: {
      switch (node.stroke_kind()) {
        case StrokeKind::Horizontal: return {true, false};
        case StrokeKind::Vertical: return {false, true};
        case StrokeKind::DownDiagonal:
        case StrokeKind::UpDiagonal: return {true, true};
        case StrokeKind::Void:
          return {!node.modifiers().shorten_head, !node.modifiers().shorten_tail};
        default: return {false, false};
      }
    }
    case SignTree::Type::Adjustment:
      switch (node.adjustment_kind()) {
        case AdjustmentKind::Restrict:
        case AdjustmentKind::Tenu: return {false, false};
        default: return expandability(node.child());
      }
    case SignTree::Type::Composition: {
      Expandability e;
      for (const SignTree& c : node.children()) {
        const Expandability ce = expandability(c);
        e.horizontal = e.horizontal || ce.horizontal;
        e.vertical = e.vertical || ce.vertical;
      }
      return e;
    }
  }
  return {};
}

/// Winkelhaken drawn smaller: ' slightly, " greatly.
inline double hook_scale(const StrokeModifiers& mods) noexcept {
  if (mods.shorten_tail) return 0.5;
  if (mods.shorten_head) return 0.75;
  return 1.0;
}

namespace detail {

inline Axis stack_axis(CompositionKind kind) noexcept {
  return kind == CompositionKind::HorizontalStack ? Axis::X : Axis::Y;
}

inline double share_weight(const SignTree& child) {
  return child.is_adjustment() && child.adjustment_kind() == AdjustmentKind::Expand ? 2.0 : 1.0;
}

// Extent a node actually needs along an axis, and how far neighbours may
// intrude past either end of it.
struct Extent {
  double size = 0;
  double kern_lo = 0;
  double kern_hi = 0;
};

class LayoutEngine {
 public:
  explicit LayoutEngine(const RenderStyle& style)
      : style_(style),
        head_(style.stroke_head_size * kCanvasHeight),
        gap_(style.stroke_gap * kCanvasHeight),
        line_(style.stroke_line_width * kCanvasHeight) {}

  LayoutNode place(const SignTree& node, const Rect& rect, double rotation) {
    LayoutNode out;
    out.type = node.type();
    out.rect = rect;
    out.rotation = rotation;
    switch (node.type()) {
      case SignTree::Type::Leaf: {
        const StrokeKind kind = node.stroke_kind();
        if (is_visible(kind) && (rect.width <= 1e-9 || rect.height <= 1e-9)) {
          throw LayoutError("stroke " + std::to_string(next_leaf_) + " has no room");
        }
        out.leaf = LeafInfo{kind, node.modifiers(), next_leaf_++};
        break;
      }
      case SignTree::Type::Adjustment: {
        out.adjustment = node.adjustment_kind();
        Rect inner = rect;
        double inner_rotation = rotation;
        if (out.adjustment == AdjustmentKind::Margin) {
          const double m = margin(rect);
          inner = {rect.x + m, rect.y + m, rect.width - 2 * m, rect.height - 2 * m};
        } else if (out.adjustment == AdjustmentKind::Tenu) {
          const double side = std::min(rect.width, rect.height);
          inner = {rect.center_x() - side / 2, rect.center_y() - side / 2, side, side};
          inner_rotation += 45.0;
        }
        out.children.push_back(place(node.child(), inner, inner_rotation));
        break;
      }
      case SignTree::Type::Composition:
        out.composition = node.composition_kind();
        if (out.composition == CompositionKind::Superposition) {
          for (const SignTree& c : node.children()) {
            out.children.push_back(place(c, rect, rotation));
          }
        } else {
          place_stack(node, rect, rotation, out);
        }
        break;
    }
    return out;
  }

 private:
  double margin(const Rect& r) const {
    return style_.margin_fraction * std::min(r.width, r.height) / 2;
  }

  void place_stack(const SignTree& node, const Rect& rect, double rotation, LayoutNode& out) {
    const Axis axis = stack_axis(node.composition_kind());
    const auto kids = node.children();
    const std::size_t n = kids.size();
    if (n == 0) return;
    const double start = axis == Axis::X ? rect.x : rect.y;
    const double length = axis == Axis::X ? rect.width : rect.height;
    const double cross = axis == Axis::X ? rect.height : rect.width;

    double total_weight = 0;
    for (const SignTree& c : kids) total_weight += share_weight(c);
    std::vector<double> alloc(n);
    std::vector<bool> grows(n);
    std::size_t growing = 0;
    for (std::size_t i = 0; i < n; ++i) {
      alloc[i] = length * share_weight(kids[i]) / total_weight;
      grows[i] = expandability(kids[i]).along(axis);
      if (grows[i]) ++growing;
    }
    const std::vector<double> initial = alloc;

    std::vector<Extent> extent(n);
    if (growing > 0) {
      double reclaimed = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (grows[i]) continue;
        extent[i] = measure(kids[i], axis, alloc[i], cross);
        const double claim = extent[i].size - extent[i].kern_lo - extent[i].kern_hi;
        reclaimed += alloc[i] - claim;
        alloc[i] = claim;
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (grows[i]) alloc[i] += reclaimed / static_cast<double>(growing);
      }
    }

    double pos = start;
    for (std::size_t i = 0; i < n; ++i) {
      double lo = pos;
      double hi = pos + alloc[i];
      if (growing > 0 && !grows[i]) {
        lo = std::max(start, lo - extent[i].kern_lo);
        hi = std::min(start + length, hi + extent[i].kern_hi);
      }
      const Rect child_rect = axis == Axis::X ? Rect{lo, rect.y, hi - lo, rect.height}
                                              : Rect{rect.x, lo, rect.width, hi - lo};
      LayoutNode placed = place(kids[i], child_rect, rotation);
      placed.initial_share = initial[i];
      placed.kern_before = extent[i].kern_lo;
      placed.kern_after = extent[i].kern_hi;
      out.children.push_back(std::move(placed));
      pos += alloc[i];
    }
  }

  // Only meaningful for nodes that cannot expand along `axis`; anything
  // that can simply uses what it is given.
  Extent measure(const SignTree& node, Axis axis, double along, double cross) const {
    if (expandability(node).along(axis)) return {along, 0, 0};
    switch (node.type()) {
      case SignTree::Type::Leaf: return measure_leaf(node, along, cross);
      case SignTree::Type::Adjustment: {
        switch (node.adjustment_kind()) {
          case AdjustmentKind::Margin: {
            const double m = style_.margin_fraction * std::min(along, cross) / 2;
            const Extent inner = measure(node.child(), axis, along - 2 * m, cross - 2 * m);
            return {std::min(along, inner.size + 2 * m), 0, 0};
          }
          case AdjustmentKind::Tenu: return {std::min(along, cross), 0, 0};
          default: return measure(node.child(), axis, along, cross);
        }
      }
      case SignTree::Type::Composition: break;
    }
    const auto kids = node.children();
    if (kids.empty()) return {0, 0, 0};
    const CompositionKind kind = node.composition_kind();
    if (is_stack(kind) && stack_axis(kind) == axis) {
      double total_weight = 0;
      for (const SignTree& c : kids) total_weight += share_weight(c);
      Extent out;
      for (std::size_t i = 0; i < kids.size(); ++i) {
        const Extent e = measure(kids[i], axis, along * share_weight(kids[i]) / total_weight, cross);
        out.size += e.size;
        if (i == 0) out.kern_lo = e.kern_lo;
        if (i + 1 == kids.size()) out.kern_hi = e.kern_hi;
      }
      return out;
    }
    // Children side by side across the axis (or overlaid): the widest one
    // decides, the others are centered on it.
    double cross_weight = 0;
    for (const SignTree& c : kids) cross_weight += share_weight(c);
    std::vector<Extent> parts;
    for (const SignTree& c : kids) {
      const double c_cross =
          kind == CompositionKind::Superposition ? cross : cross * share_weight(c) / cross_weight;
      parts.push_back(measure(c, axis, along, c_cross));
    }
    Extent out;
    for (const Extent& e : parts) out.size = std::max(out.size, e.size);
    out.kern_lo = out.kern_hi = out.size;
    for (const Extent& e : parts) {
      const double offset = (out.size - e.size) / 2;
      out.kern_lo = std::min(out.kern_lo, offset + e.kern_lo);
      out.kern_hi = std::min(out.kern_hi, offset + e.kern_hi);
    }
    return out;
  }

  Extent measure_leaf(const SignTree& leaf, double along, double cross) const {
    const double head = std::min(head_, cross);
    switch (leaf.stroke_kind()) {
      case StrokeKind::Void: return {along, 0, 0};
      case StrokeKind::Cursor: return {std::min(along, line_ + gap_), 0, 0};
      case StrokeKind::Winkelhaken: {
        const double size = std::min(along, head + gap_);
        // The hook keeps its full slot; a shrunken hook leaves part of it empty.
        const double spare = (1.0 - hook_scale(leaf.modifiers())) * (size - gap_) / 2;
        return {size, std::max(0.0, spare), std::max(0.0, spare)};
      }
      default: return {std::min(along, head + gap_), 0, 0};
    }
  }

  const RenderStyle& style_;
  double head_;
  double gap_;
  double line_;
  std::size_t next_leaf_ = 0;
};

}  // namespace detail

inline Rect canvas_rect(CanvasSize canvas) noexcept {
  return {0, 0, kCanvasHeight * aspect_ratio(canvas), kCanvasHeight};
}

/// Lays out a sign on its canvas (1000 units tall).
inline LayoutTree layout(const SignCode& code, const RenderStyle& style = default_style()) {
  LayoutTree out;
  out.canvas = code.canvas;
  const Rect canvas = canvas_rect(code.canvas);
  out.width = canvas.width;
  out.height = canvas.height;
  const double pad = style.canvas_padding * kCanvasHeight;
  const Rect inner{pad, pad, canvas.width - 2 * pad, canvas.height - 2 * pad};
  detail::LayoutEngine engine(style);
  out.root = engine.place(code.root, inner, 0.0);
  return out;
}

/// Leaf nodes of a layout, document order.
inline std::vector<const LayoutNode*> layout_leaves(const LayoutNode& root) {
  std::vector<const LayoutNode*> out;
  auto walk = [&](auto&& self, const LayoutNode& n) -> void {
    if (n.leaf) out.push_back(&n);
    for (const LayoutNode& c : n.children) self(self, c);
  };
  walk(walk, root);
  return out;
}

}  // namespace kadaru
