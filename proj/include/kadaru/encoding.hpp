// Sign trees and the kadaru text syntax.
//
// A sign is a tree: strokes at the leaves, compositions (horizontal stack,
// vertical stack, superposition) at the branches, and adjustments (tenû,
// expand, margin, restrict) as single-child wrapper nodes. The text form
// writes strokes as lowercase letters, compositions as brackets, and
// stroke modifiers / adjustments as suffixes:
//
//   [vh]         horizontal stack of a vertical and a horizontal
//   (v{hh})      a vertical superposed on a vertical stack of horizontals
//   W[{0[hc]h}v{h[v!v2!]Mh}v]
//                wide canvas, voids, highlight and double-head modifiers,
//                and a margin adjustment on the inner stack
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kadaru {

enum class StrokeKind : char {
  Horizontal = 'h',
  Vertical = 'v',
  DownDiagonal = 'd',
  UpDiagonal = 'u',
  Winkelhaken = 'c',
  Void = '0',
  Wildcard = '*',
  Cursor = '|',
};

enum class CompositionKind : std::uint8_t {
  HorizontalStack,
  VerticalStack,
  Superposition,
};

enum class AdjustmentKind : char {
  Tenu = 'T',
  Expand = 'E',
  Margin = 'M',
  Restrict = 'R',
};

/// Width:height ratio of the drawing canvas.
enum class CanvasSize : char {
  Narrow = 'N',     // 1:3
  Portrait = 'P',   // 2:3
  Square = 'S',     // 1:1
  Landscape = 'L',  // 3:2
  Wide = 'W',       // 2:1
  ExtraWide = 'X',  // 3:1
};

struct StrokeModifiers {
  bool shorten_head = false;  // '
  bool shorten_tail = false;  // "
  int heads = 1;              // 2, 3
  bool damaged = false;       // #
  bool highlighted = false;   // !
  bool inverted = false;      // ?

  friend bool operator==(const StrokeModifiers&, const StrokeModifiers&) = default;
};

inline constexpr std::optional<StrokeKind> stroke_from_char(char c) noexcept {
  switch (c) {
    case 'h': return StrokeKind::Horizontal;
    case 'v': return StrokeKind::Vertical;
    case 'd': return StrokeKind::DownDiagonal;
    case 'u': return StrokeKind::UpDiagonal;
    case 'c': return StrokeKind::Winkelhaken;
    case '0': return StrokeKind::Void;
    case '*': return StrokeKind::Wildcard;
    case '|': return StrokeKind::Cursor;
    default: return std::nullopt;
  }
}

inline constexpr std::optional<AdjustmentKind> adjustment_from_char(char c) noexcept {
  switch (c) {
    case 'T': return AdjustmentKind::Tenu;
    case 'E': return AdjustmentKind::Expand;
    case 'M': return AdjustmentKind::Margin;
    case 'R': return AdjustmentKind::Restrict;
    default: return std::nullopt;
  }
}

inline constexpr std::optional<CanvasSize> canvas_from_char(char c) noexcept {
  switch (c) {
    case 'N': return CanvasSize::Narrow;
    case 'P': return CanvasSize::Portrait;
    case 'S': return CanvasSize::Square;
    case 'L': return CanvasSize::Landscape;
    case 'W': return CanvasSize::Wide;
    case 'X': return CanvasSize::ExtraWide;
    default: return std::nullopt;
  }
}

/// Width divided by height.
inline constexpr double aspect_ratio(CanvasSize size) noexcept {
  switch (size) {
    case CanvasSize::Narrow: return 1.0 / 3.0;
    case CanvasSize::Portrait: return 2.0 / 3.0;
    case CanvasSize::Square: return 1.0;
    case CanvasSize::Landscape: return 3.0 / 2.0;
    case CanvasSize::Wide: return 2.0;
    case CanvasSize::ExtraWide: return 3.0;
  }
  return 1.0;
}

inline constexpr char opening_bracket(CompositionKind kind) noexcept {
  switch (kind) {
    case CompositionKind::HorizontalStack: return '[';
    case CompositionKind::VerticalStack: return '{';
    case CompositionKind::Superposition: return '(';
  }
  return '?';
}

inline constexpr char closing_bracket(CompositionKind kind) noexcept {
  switch (kind) {
    case CompositionKind::HorizontalStack: return ']';
    case CompositionKind::VerticalStack: return '}';
    case CompositionKind::Superposition: return ')';
  }
  return '?';
}

inline constexpr bool is_stack(CompositionKind kind) noexcept {
  return kind != CompositionKind::Superposition;
}

/// Strokes that leave ink on the page.
inline constexpr bool is_visible(StrokeKind kind) noexcept {
  return kind != StrokeKind::Void;
}

/// One node of a sign. Leaves hold a stroke, compositions hold an ordered
/// list of children, adjustments hold exactly one child.
///
/// Leaves may carry an origin: the document-order index of the leaf they
/// were derived from. Normalization sets it so matches found in a
/// normalized tree can be traced back to the tree the user wrote. The
/// origin does not take part in equality.
class SignTree {
 public:
  enum class Type : std::uint8_t { Leaf, Composition, Adjustment };

  static constexpr std::size_t kNoOrigin = static_cast<std::size_t>(-1);

  static SignTree stroke(StrokeKind kind, StrokeModifiers mods = {}) {
    SignTree t(Type::Leaf, static_cast<std::uint8_t>(kind));
    t.mods_ = mods;
    return t;
  }

  static SignTree compose(CompositionKind kind, std::vector<SignTree> children) {
    SignTree t(Type::Composition, static_cast<std::uint8_t>(kind));
    t.children_ = std::move(children);
    return t;
  }

  static SignTree adjust(AdjustmentKind kind, SignTree child) {
    SignTree t(Type::Adjustment, static_cast<std::uint8_t>(kind));
    t.children_.push_back(std::move(child));
    return t;
  }

  Type type() const noexcept { return type_; }
  bool is_leaf() const noexcept { return type_ == Type::Leaf; }
  bool is_composition() const noexcept { return type_ == Type::Composition; }
  bool is_adjustment() const noexcept { return type_ == Type::Adjustment; }

  bool is_composition(CompositionKind kind) const noexcept {
    return is_composition() && composition_kind() == kind;
  }
  bool is_stroke(StrokeKind kind) const noexcept {
    return is_leaf() && stroke_kind() == kind;
  }

  StrokeKind stroke_kind() const { return static_cast<StrokeKind>(check(Type::Leaf)); }
  CompositionKind composition_kind() const {
    return static_cast<CompositionKind>(check(Type::Composition));
  }
  AdjustmentKind adjustment_kind() const {
    return static_cast<AdjustmentKind>(check(Type::Adjustment));
  }

  const StrokeModifiers& modifiers() const {
    check(Type::Leaf);
    return mods_;
  }

  /// Children of a composition, or the single child of an adjustment.
  std::span<const SignTree> children() const noexcept { return children_; }
  std::vector<SignTree>& mutable_children() noexcept { return children_; }
  const SignTree& child() const {
    check(Type::Adjustment);
    return children_.front();
  }

  std::size_t origin() const noexcept { return origin_; }
  void set_origin(std::size_t origin) noexcept { origin_ = origin; }

  friend bool operator==(const SignTree& a, const SignTree& b) {
    return a.type_ == b.type_ && a.kind_ == b.kind_ && a.mods_ == b.mods_ &&
           a.children_ == b.children_;
  }

 private:
  SignTree(Type type, std::uint8_t kind) : type_(type), kind_(kind) {}

  std::uint8_t check(Type expected) const {
    if (type_ != expected) throw std::logic_error("SignTree: wrong node type");
    return kind_;
  }

  Type type_;
  std::uint8_t kind_;
  StrokeModifiers mods_{};
  std::size_t origin_ = kNoOrigin;
  std::vector<SignTree> children_;
};

struct SignCode {
  CanvasSize canvas = CanvasSize::Square;
  SignTree root = SignTree::stroke(StrokeKind::Void);

  friend bool operator==(const SignCode&, const SignCode&) = default;
};

// ---------------------------------------------------------------------------
// Errors

enum class ParseErrorKind {
  UnbalancedBracket,
  UnknownCharacter,
  DanglingModifier,
  EmptyInput,
};

inline constexpr std::string_view to_string(ParseErrorKind kind) noexcept {
  switch (kind) {
    case ParseErrorKind::UnbalancedBracket: return "UnbalancedBracket";
    case ParseErrorKind::UnknownCharacter: return "UnknownCharacter";
    case ParseErrorKind::DanglingModifier: return "DanglingModifier";
    case ParseErrorKind::EmptyInput: return "EmptyInput";
  }
  return "ParseError";
}

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t offset, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + " at offset " +
                           std::to_string(offset) + ": " + what),
        kind_(kind),
        offset_(offset) {}

  ParseErrorKind kind() const noexcept { return kind_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  ParseErrorKind kind_;
  std::size_t offset_;
};

struct ParseWarning {
  std::size_t offset;
  std::string message;
};

// ---------------------------------------------------------------------------
// Parser

namespace detail {

inline constexpr bool is_delimiter(char c) noexcept {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ',';
}

inline constexpr bool is_modifier_char(char c) noexcept {
  return c == '\'' || c == '"' || c == '2' || c == '3' || c == '#' || c == '!' || c == '?';
}

inline constexpr std::optional<CompositionKind> composition_from_opener(char c) noexcept {
  switch (c) {
    case '[': return CompositionKind::HorizontalStack;
    case '{': return CompositionKind::VerticalStack;
    case '(': return CompositionKind::Superposition;
    default: return std::nullopt;
  }
}

inline constexpr bool is_closer(char c) noexcept { return c == ']' || c == '}' || c == ')'; }

inline std::string describe(char c) {
  if (static_cast<unsigned char>(c) < 0x20 || static_cast<unsigned char>(c) >= 0x7f) {
    return "byte " + std::to_string(static_cast<unsigned char>(c));
  }
  return std::string("'") + c + "'";
}

class Parser {
 public:
  Parser(std::string_view text, std::vector<ParseWarning>* warnings)
      : text_(text), warnings_(warnings) {}

  SignCode parse() {
    SignCode code;
    skip_delimiters();
    if (!at_end()) {
      if (auto canvas = canvas_from_char(peek())) {
        code.canvas = *canvas;
        ++pos_;
      }
    }
    std::vector<SignTree> nodes = parse_sequence(std::nullopt, 0);
    if (nodes.empty()) {
      throw ParseError(ParseErrorKind::EmptyInput, pos_, "no strokes or compositions");
    }
    if (nodes.size() == 1) {
      code.root = std::move(nodes.front());
    } else {
      code.root = SignTree::compose(CompositionKind::HorizontalStack, std::move(nodes));
    }
    return code;
  }

 private:
  bool at_end() const noexcept { return pos_ >= text_.size(); }
  char peek() const noexcept { return text_[pos_]; }

  void skip_delimiters() noexcept {
    while (!at_end() && is_delimiter(peek())) ++pos_;
  }

  void warn(std::size_t offset, std::string message) {
    if (warnings_) warnings_->push_back({offset, std::move(message)});
  }

  // Parses nodes until `closer` (or end of input at top level).
  std::vector<SignTree> parse_sequence(std::optional<char> closer, std::size_t open_offset) {
    std::vector<SignTree> nodes;
    for (;;) {
      skip_delimiters();
      if (at_end()) {
        if (closer) {
          throw ParseError(ParseErrorKind::UnbalancedBracket, open_offset,
                           "bracket is never closed");
        }
        return nodes;
      }
      const char c = peek();
      if (is_closer(c)) {
        if (closer && c == *closer) {
          ++pos_;
          return nodes;
        }
        throw ParseError(ParseErrorKind::UnbalancedBracket, pos_,
                         closer ? "expected '" + std::string(1, *closer) + "' but found '" +
                                      c + "'"
                                : "closing '" + std::string(1, c) + "' without opener");
      }
      nodes.push_back(parse_node());
    }
  }

  SignTree parse_node() {
    const std::size_t start = pos_;
    const char c = peek();
    SignTree node = SignTree::stroke(StrokeKind::Void);
    if (auto kind = composition_from_opener(c)) {
      ++pos_;
      node = SignTree::compose(*kind, parse_sequence(closing_bracket(*kind), start));
    } else if (auto stroke = stroke_from_char(c)) {
      ++pos_;
      node = SignTree::stroke(*stroke, parse_modifiers(*stroke));
    } else if (is_modifier_char(c) || adjustment_from_char(c)) {
      throw ParseError(ParseErrorKind::DanglingModifier, start,
                       describe(c) + " does not follow a node");
    } else {
      throw ParseError(ParseErrorKind::UnknownCharacter, start,
                       describe(c) + " is not part of the syntax");
    }
    while (!at_end()) {
      const char next = peek();
      if (auto adj = adjustment_from_char(next)) {
        ++pos_;
        node = SignTree::adjust(*adj, std::move(node));
      } else if (is_modifier_char(next)) {
        throw ParseError(ParseErrorKind::DanglingModifier, pos_,
                         describe(next) + " can only follow a stroke");
      } else {
        break;
      }
    }
    return node;
  }

  StrokeModifiers parse_modifiers(StrokeKind kind) {
    StrokeModifiers mods;
    std::optional<std::size_t> heads_offset;
    while (!at_end() && is_modifier_char(peek())) {
      const char m = peek();
      switch (m) {
        case '\'': mods.shorten_head = true; break;
        case '"': mods.shorten_tail = true; break;
        case '#': mods.damaged = true; break;
        case '!': mods.highlighted = true; break;
        case '?': mods.inverted = true; break;
        case '2':
        case '3': {
          const int heads = m - '0';
          if (heads_offset) {
            warn(pos_, "head count given twice; the last one wins");
          }
          heads_offset = pos_;
          mods.heads = heads;
          break;
        }
        default: break;
      }
      ++pos_;
    }
    const bool multi_head_capable = kind == StrokeKind::Horizontal ||
                                    kind == StrokeKind::Vertical ||
                                    kind == StrokeKind::DownDiagonal ||
                                    kind == StrokeKind::UpDiagonal;
    if (heads_offset && !multi_head_capable) {
      warn(*heads_offset, std::string("head count has no effect on '") +
                              static_cast<char>(kind) + "'");
      mods.heads = 1;
    }
    return mods;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<ParseWarning>* warnings_;
};

inline void serialize_node(const SignTree& node, std::string& out) {
  switch (node.type()) {
    case SignTree::Type::Leaf: {
      out += static_cast<char>(node.stroke_kind());
      const StrokeModifiers& m = node.modifiers();
      if (m.heads > 1) out += static_cast<char>('0' + m.heads);
      if (m.shorten_head) out += '\'';
      if (m.shorten_tail) out += '"';
      if (m.inverted) out += '?';
      if (m.damaged) out += '#';
      if (m.highlighted) out += '!';
      break;
    }
    case SignTree::Type::Composition:
      out += opening_bracket(node.composition_kind());
      for (const SignTree& c : node.children()) serialize_node(c, out);
      out += closing_bracket(node.composition_kind());
      break;
    case SignTree::Type::Adjustment:
      serialize_node(node.child(), out);
      out += static_cast<char>(node.adjustment_kind());
      break;
  }
}

template <typename Visit>
void visit_leaves(const SignTree& node, Visit&& visit) {
  if (node.is_leaf()) {
    visit(node);
    return;
  }
  for (const SignTree& c : node.children()) visit_leaves(c, visit);
}

}  // namespace detail

/// Parses kadaru text. Commas and whitespace between nodes are ignored.
/// Non-fatal oddities (duplicate head counts, head counts on hooks and
/// pseudo-strokes) are reported through `warnings` when given.
inline SignCode parse(std::string_view text, std::vector<ParseWarning>* warnings = nullptr) {
  return detail::Parser(text, warnings).parse();
}

inline std::string serialize(const SignTree& tree) {
  std::string out;
  detail::serialize_node(tree, out);
  return out;
}

/// Canonical spelling: no delimiters, canvas letter only when not square,
/// modifiers in the order heads ' " ? # !.
inline std::string serialize(const SignCode& code) {
  std::string out;
  if (code.canvas != CanvasSize::Square) out += static_cast<char>(code.canvas);
  detail::serialize_node(code.root, out);
  return out;
}

/// Leaves in depth-first, left-to-right order. Pointers stay valid for the
/// lifetime of `tree` as long as it is not modified.
inline std::vector<const SignTree*> leaves(const SignTree& tree) {
  std::vector<const SignTree*> out;
  detail::visit_leaves(tree, [&](const SignTree& leaf) { out.push_back(&leaf); });
  return out;
}

inline std::size_t leaf_count(const SignTree& tree) {
  std::size_t n = 0;
  detail::visit_leaves(tree, [&](const SignTree&) { ++n; });
  return n;
}

}  // namespace kadaru
