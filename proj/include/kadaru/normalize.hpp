// Canonical comparable form of a sign.
//
// Normalization throws away everything that only matters for drawing
// (stroke lengths, gaps, highlight, damage, margins) and resolves the
// structural ambiguities of the encoding, so two codes for the same
// arrangement of strokes end up identical.
#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kadaru/encoding.hpp"

namespace kadaru {

enum class NormalizationMode {
  Standard,
  /// Downward diagonals and Winkelhaken are treated as the same stroke.
  Gottstein,
};

inline constexpr std::string_view to_string(NormalizationMode mode) noexcept {
  return mode == NormalizationMode::Gottstein ? "gottstein" : "standard";
}

inline std::optional<NormalizationMode> mode_from_string(std::string_view name) noexcept {
  if (name == "standard") return NormalizationMode::Standard;
  if (name == "gottstein") return NormalizationMode::Gottstein;
  return std::nullopt;
}

/// Result of normalize(): either a tree or Empty (the input had no strokes).
/// Leaves carry the origin index of the input leaf they came from.
class NormalizedTree {
 public:
  NormalizedTree() = default;
  explicit NormalizedTree(SignTree root, NormalizationMode mode = NormalizationMode::Standard)
      : root_(std::move(root)), mode_(mode) {}

  bool empty() const noexcept { return !root_.has_value(); }
  const SignTree& root() const {
    if (!root_) throw std::logic_error("NormalizedTree: empty");
    return *root_;
  }
  const std::optional<SignTree>& tree() const noexcept { return root_; }
  NormalizationMode mode() const noexcept { return mode_; }

  static NormalizedTree empty_in(NormalizationMode mode) {
    NormalizedTree out;
    out.mode_ = mode;
    return out;
  }

  friend bool operator==(const NormalizedTree&, const NormalizedTree&) = default;

 private:
  std::optional<SignTree> root_;
  NormalizationMode mode_ = NormalizationMode::Standard;
};

inline constexpr std::string_view kEmptySentinel = "<empty>";

inline std::string serialize(const NormalizedTree& tree) {
  return tree.empty() ? std::string(kEmptySentinel) : serialize(tree.root());
}

namespace detail {

// Character order for comparing serializations: closers first so that a
// prefix sorts before its extensions, then c < d < h < u < v < * < [ < { < (.
inline constexpr int sort_rank(char c) noexcept {
  switch (c) {
    case ']':
    case '}':
    case ')': return 0;
    case 'c': return 1;
    case 'd': return 2;
    case 'h': return 3;
    case 'u': return 4;
    case 'v': return 5;
    case '*': return 6;
    case '[': return 7;
    case '{': return 8;
    case '(': return 9;
    default: return 10 + static_cast<unsigned char>(c);
  }
}

inline bool canonical_less(std::string_view a, std::string_view b) noexcept {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](char x, char y) { return sort_rank(x) < sort_rank(y); });
}

struct StripContext {
  bool tenu = false;
};

inline StrokeKind normalized_kind(StrokeKind kind, const StripContext& ctx) noexcept {
  if (ctx.tenu) {
    if (kind == StrokeKind::Horizontal) kind = StrokeKind::UpDiagonal;
    else if (kind == StrokeKind::Vertical) kind = StrokeKind::DownDiagonal;
  }
  return kind;
}

inline SignTree bare_leaf(StrokeKind kind, std::size_t origin) {
  SignTree leaf = SignTree::stroke(kind);
  leaf.set_origin(origin);
  return leaf;
}

// Leaf-level rules and adjustment removal. Compositions are rebuilt from
// their surviving children without any structural simplification.
inline std::optional<SignTree> strip(const SignTree& node, const StripContext& ctx,
                                     std::size_t& next_leaf) {
  switch (node.type()) {
    case SignTree::Type::Leaf: {
      const std::size_t origin =
          node.origin() != SignTree::kNoOrigin ? node.origin() : next_leaf;
      ++next_leaf;
      const StrokeKind raw = node.stroke_kind();
      switch (raw) {
        case StrokeKind::Void:
        case StrokeKind::Cursor: return std::nullopt;
        case StrokeKind::Wildcard:
        case StrokeKind::Winkelhaken: return bare_leaf(raw, origin);
        default: break;
      }
      const StrokeKind kind = normalized_kind(raw, ctx);
      const int heads = node.modifiers().heads;
      if (heads <= 1) return bare_leaf(kind, origin);
      // Extra heads repeat along the stroke's own direction.
      const CompositionKind axis = raw == StrokeKind::Horizontal
                                       ? CompositionKind::HorizontalStack
                                       : CompositionKind::VerticalStack;
      std::vector<SignTree> copies;
      for (int i = 0; i < heads; ++i) copies.push_back(bare_leaf(kind, origin));
      return SignTree::compose(axis, std::move(copies));
    }
    case SignTree::Type::Adjustment: {
      StripContext inner = ctx;
      if (node.adjustment_kind() == AdjustmentKind::Tenu) inner.tenu = true;
      return strip(node.child(), inner, next_leaf);
    }
    case SignTree::Type::Composition: {
      std::vector<SignTree> kids;
      for (const SignTree& c : node.children()) {
        if (auto s = strip(c, ctx, next_leaf)) kids.push_back(std::move(*s));
      }
      return SignTree::compose(node.composition_kind(), std::move(kids));
    }
  }
  return std::nullopt;
}

inline bool contains_stroke(const SignTree& node, StrokeKind kind) {
  if (node.is_leaf()) return node.stroke_kind() == kind;
  return std::any_of(node.children().begin(), node.children().end(),
                     [&](const SignTree& c) { return contains_stroke(c, kind); });
}

inline bool only_strokes(const SignTree& node, StrokeKind kind) {
  if (node.is_leaf()) return node.stroke_kind() == kind;
  return std::all_of(node.children().begin(), node.children().end(),
                     [&](const SignTree& c) { return only_strokes(c, kind); });
}

inline bool is_mixed_superposition(const SignTree& node) {
  return node.is_composition(CompositionKind::Superposition) &&
         contains_stroke(node, StrokeKind::Horizontal) &&
         contains_stroke(node, StrokeKind::Vertical);
}

class Simplifier {
 public:
  std::optional<SignTree> run(SignTree node, std::optional<CompositionKind> parent) {
    if (++steps_ > kMaxSteps) {
      throw std::logic_error("normalize: rewrite did not terminate");
    }
    if (!node.is_composition()) return node;

    const CompositionKind kind = node.composition_kind();
    std::vector<SignTree> kids;
    for (SignTree& c : node.mutable_children()) {
      if (auto s = run(std::move(c), kind)) kids.push_back(std::move(*s));
    }

    for (;;) {
      if (kids.empty()) return std::nullopt;
      if (kids.size() == 1) return run(std::move(kids.front()), parent);
      if (flatten(kind, kids)) continue;
      break;
    }
    // The parent will flatten this node into itself and rewrite the merged list.
    if (parent == kind) return SignTree::compose(kind, std::move(kids));
    if (kind == CompositionKind::Superposition) sort_children(kids);

    if (auto t = transpose_rows(kind, kids, parent)) return run(std::move(*t), parent);
    if (auto t = transpose_columns(kind, kids, parent)) return run(std::move(*t), parent);
    if (auto t = extract_edge_hooks(kind, kids)) return run(std::move(*t), parent);
    if (auto t = absorb_into_superposition(kind, kids)) return run(std::move(*t), parent);
    return SignTree::compose(kind, std::move(kids));
  }

 private:
  static constexpr std::size_t kMaxSteps = 1'000'000;

  static bool flatten(CompositionKind kind, std::vector<SignTree>& kids) {
    const bool nested = std::any_of(kids.begin(), kids.end(),
                                    [&](const SignTree& c) { return c.is_composition(kind); });
    if (!nested) return false;
    std::vector<SignTree> flat;
    for (SignTree& c : kids) {
      if (c.is_composition(kind)) {
        for (SignTree& g : c.mutable_children()) flat.push_back(std::move(g));
      } else {
        flat.push_back(std::move(c));
      }
    }
    kids = std::move(flat);
    return true;
  }

  static void sort_children(std::vector<SignTree>& kids) {
    std::vector<std::pair<std::string, SignTree>> keyed;
    keyed.reserve(kids.size());
    for (SignTree& c : kids) keyed.emplace_back(serialize(c), std::move(c));
    std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
      return canonical_less(a.first, b.first);
    });
    kids.clear();
    for (auto& [key, c] : keyed) kids.push_back(std::move(c));
  }

  // Stack of stacks with equal lengths, all of the other kind: swap rows
  // and columns.
  static std::optional<SignTree> transpose(CompositionKind outer, CompositionKind inner,
                                           std::vector<SignTree>& kids) {
    if (kids.size() < 2) return std::nullopt;
    const std::size_t width = kids.front().children().size();
    for (const SignTree& c : kids) {
      if (!c.is_composition(inner) || c.children().size() != width) return std::nullopt;
    }
    std::vector<SignTree> columns;
    for (std::size_t j = 0; j < width; ++j) {
      std::vector<SignTree> column;
      for (SignTree& row : kids) column.push_back(std::move(row.mutable_children()[j]));
      columns.push_back(SignTree::compose(outer, std::move(column)));
    }
    return SignTree::compose(inner, std::move(columns));
  }

  static std::optional<SignTree> transpose_rows(CompositionKind kind, std::vector<SignTree>& kids,
                                                std::optional<CompositionKind> parent) {
    if (kind != CompositionKind::VerticalStack || parent == CompositionKind::VerticalStack) {
      return std::nullopt;
    }
    return transpose(CompositionKind::VerticalStack, CompositionKind::HorizontalStack, kids);
  }

  static std::optional<SignTree> transpose_columns(CompositionKind kind,
                                                   std::vector<SignTree>& kids,
                                                   std::optional<CompositionKind> parent) {
    if (kind != CompositionKind::HorizontalStack || parent != CompositionKind::VerticalStack) {
      return std::nullopt;
    }
    return transpose(CompositionKind::HorizontalStack, CompositionKind::VerticalStack, kids);
  }

  // Winkelhaken at either end of a row that also holds a horizontal move out
  // of the vertical stack into columns of their own: {[hc]h} -> [{}{hh}{c}].
  static std::optional<SignTree> extract_edge_hooks(CompositionKind kind,
                                                    std::vector<SignTree>& kids) {
    if (kind != CompositionKind::VerticalStack) return std::nullopt;
    auto has_edge_hook = [](const SignTree& row) {
      if (!row.is_composition(CompositionKind::HorizontalStack)) return false;
      const auto cells = row.children();
      const bool has_horizontal =
          std::any_of(cells.begin(), cells.end(),
                      [](const SignTree& c) { return c.is_stroke(StrokeKind::Horizontal); });
      return has_horizontal && !cells.empty() &&
             (cells.front().is_stroke(StrokeKind::Winkelhaken) ||
              cells.back().is_stroke(StrokeKind::Winkelhaken));
    };
    if (std::none_of(kids.begin(), kids.end(), has_edge_hook)) return std::nullopt;
    std::vector<SignTree> left, right;
    std::vector<SignTree> rows;
    for (SignTree& row : kids) {
      if (row.is_composition(CompositionKind::HorizontalStack)) {
        auto& cells = row.mutable_children();
        const bool has_horizontal =
            std::any_of(cells.begin(), cells.end(),
                        [](const SignTree& c) { return c.is_stroke(StrokeKind::Horizontal); });
        if (has_horizontal) {
          if (cells.front().is_stroke(StrokeKind::Winkelhaken)) {
            left.push_back(std::move(cells.front()));
            cells.erase(cells.begin());
          }
          if (!cells.empty() && cells.back().is_stroke(StrokeKind::Winkelhaken)) {
            right.push_back(std::move(cells.back()));
            cells.pop_back();
          }
        }
      }
      rows.push_back(std::move(row));
    }
    std::vector<SignTree> columns;
    columns.push_back(SignTree::compose(CompositionKind::VerticalStack, std::move(left)));
    columns.push_back(SignTree::compose(CompositionKind::VerticalStack, std::move(rows)));
    columns.push_back(SignTree::compose(CompositionKind::VerticalStack, std::move(right)));
    return SignTree::compose(CompositionKind::HorizontalStack, std::move(columns));
  }

  // {hh(hv)} -> ({hhh}v): a stack of parallel strokes around a mixed
  // superposition is merged with the superposition's matching component.
  static std::optional<SignTree> absorb_into_superposition(CompositionKind kind,
                                                           std::vector<SignTree>& kids) {
    StrokeKind parallel;
    if (kind == CompositionKind::VerticalStack) parallel = StrokeKind::Horizontal;
    else if (kind == CompositionKind::HorizontalStack) parallel = StrokeKind::Vertical;
    else return std::nullopt;

    std::optional<std::size_t> sup_at;
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (kids[i].is_stroke(parallel)) continue;
      if (sup_at || !is_mixed_superposition(kids[i])) return std::nullopt;
      sup_at = i;
    }
    if (!sup_at) return std::nullopt;

    auto& components = kids[*sup_at].mutable_children();
    std::optional<std::size_t> match;
    for (std::size_t i = 0; i < components.size(); ++i) {
      const SignTree& c = components[i];
      const bool fits = (c.is_leaf() || c.is_composition(kind)) && only_strokes(c, parallel);
      if (!fits) continue;
      if (match) return std::nullopt;
      match = i;
    }
    if (!match) return std::nullopt;

    std::vector<SignTree> stack;
    for (std::size_t i = 0; i < kids.size(); ++i) {
      stack.push_back(i == *sup_at ? std::move(components[*match]) : std::move(kids[i]));
    }
    std::vector<SignTree> merged;
    for (std::size_t i = 0; i < components.size(); ++i) {
      if (i != *match) merged.push_back(std::move(components[i]));
    }
    merged.push_back(SignTree::compose(kind, std::move(stack)));
    return SignTree::compose(CompositionKind::Superposition, std::move(merged));
  }

  std::size_t steps_ = 0;
};

}  // namespace detail

namespace detail {

inline std::optional<SignTree> simplify(std::optional<SignTree> current) {
  Simplifier simplifier;
  // A rewrite can change a node's parent, which re-enables rules that
  // depend on it; iterate until nothing moves.
  for (int pass = 0; current; ++pass) {
    if (pass > 64) throw std::logic_error("normalize: no fixed point");
    std::optional<SignTree> next = simplifier.run(*current, std::nullopt);
    if (next == current) break;
    current = std::move(next);
  }
  return current;
}

inline SignTree merge_down_diagonals(const SignTree& node) {
  if (node.is_leaf()) {
    if (!node.is_stroke(StrokeKind::DownDiagonal)) return node;
    return bare_leaf(StrokeKind::Winkelhaken, node.origin());
  }
  std::vector<SignTree> kids;
  for (const SignTree& c : node.children()) kids.push_back(merge_down_diagonals(c));
  return SignTree::compose(node.composition_kind(), std::move(kids));
}

}  // namespace detail

/// Rewrites `tree` into its canonical form. Total: a tree with no visible
/// strokes yields an empty result.
///
/// Gottstein mode starts from the standard form and merges downward
/// diagonals into hooks before simplifying again. Merging first would let
/// the hook extraction group hooks differently depending on which pass
/// found them.
inline NormalizedTree normalize(const SignTree& tree,
                                NormalizationMode mode = NormalizationMode::Standard) {
  std::size_t next_leaf = 0;
  std::optional<SignTree> current =
      detail::simplify(detail::strip(tree, {}, next_leaf));
  if (current && mode == NormalizationMode::Gottstein) {
    current = detail::simplify(detail::merge_down_diagonals(*current));
  }
  if (!current) return NormalizedTree::empty_in(mode);
  return NormalizedTree(std::move(*current), mode);
}

inline NormalizedTree normalize(const SignCode& code,
                                NormalizationMode mode = NormalizationMode::Standard) {
  return normalize(code.root, mode);
}

inline bool is_normalized(const SignTree& tree,
                          NormalizationMode mode = NormalizationMode::Standard) {
  const NormalizedTree n = normalize(tree, mode);
  return !n.empty() && n.root() == tree;
}

}  // namespace kadaru
