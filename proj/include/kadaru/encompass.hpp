// The encompassing relation: does a sign contain a search pattern, with the
// relationships between the pattern's strokes preserved?
//
// Strokes need not be contiguous in the sign and other strokes around them
// are ignored, so a pattern can be any visible part of a damaged sign.
#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "kadaru/encoding.hpp"
#include "kadaru/normalize.hpp"

namespace kadaru {

struct MatchResult {
  bool matched = false;
  /// For each non-wildcard needle leaf, in needle document order, the
  /// document-order index of the haystack leaf it was bound to.
  std::vector<std::size_t> matched_leaves;

  /// Distinct haystack leaves taking part in the match, ascending.
  std::set<std::size_t> leaf_set() const {
    return {matched_leaves.begin(), matched_leaves.end()};
  }
};

namespace detail {

// Binding of one needle leaf, identified by its origin, to a haystack leaf.
using Binding = std::pair<std::size_t, std::size_t>;

class Matcher {
 public:
  explicit Matcher(const SignTree& haystack) {
    std::size_t i = 0;
    visit_leaves(haystack, [&](const SignTree& leaf) { leaf_index_[&leaf] = i++; });
  }

  // A needle is either one node or a run of consecutive children of a
  // needle stack, treated as a stack of the same kind.
  struct Needle {
    const SignTree* node = nullptr;
    CompositionKind kind = CompositionKind::HorizontalStack;
    std::span<const SignTree> kids;

    static Needle of(const SignTree& n) {
      Needle out;
      out.node = &n;
      if (n.is_composition()) {
        out.kind = n.composition_kind();
        out.kids = n.children();
      }
      return out;
    }
    static Needle group(CompositionKind kind, std::span<const SignTree> kids) {
      if (kids.size() == 1) return of(kids.front());
      Needle out;
      out.kind = kind;
      out.kids = kids;
      return out;
    }
    bool is_leaf() const { return node && node->is_leaf(); }
  };

  bool match(const SignTree& hay, const Needle& needle, std::vector<Binding>& out) {
    const Key key{&hay, needle.node, needle.kids.data(), needle.kids.size()};
    if (failed_.count(key)) return false;
    const std::size_t mark = out.size();
    if (match_uncached(hay, needle, out)) return true;
    out.resize(mark);
    failed_.insert(key);
    return false;
  }

 private:
  using Key = std::tuple<const SignTree*, const SignTree*, const SignTree*, std::size_t>;
  using AssignKey = std::tuple<const SignTree*, const SignTree*, const SignTree*, std::size_t,
                               std::size_t, std::size_t>;

  bool match_uncached(const SignTree& hay, const Needle& needle, std::vector<Binding>& out) {
    if (needle.is_leaf()) {
      if (hay.is_leaf()) {
        const StrokeKind want = needle.node->stroke_kind();
        if (want == StrokeKind::Wildcard) return true;
        if (hay.stroke_kind() != want) return false;
        out.emplace_back(needle.node->origin(), leaf_index_.at(&hay));
        return true;
      }
      return descend(hay, needle, out);
    }
    if (hay.is_leaf()) return false;

    if (needle.node && needle.kids.size() == 1) {
      if (same_setting(hay.composition_kind(), needle.kind, needle.kids.front())) {
        for (const SignTree& c : hay.children()) {
          if (match(c, Needle::of(needle.kids.front()), out)) return true;
        }
      }
      return descend(hay, needle, out);
    }
    if (hay.is_composition(CompositionKind::Superposition) &&
        needle.kind == CompositionKind::Superposition) {
      if (match_superposition(hay, needle, out)) return true;
    } else if (hay.is_composition() && is_stack(needle.kind) &&
               hay.composition_kind() == needle.kind) {
      if (assign(hay, needle, 0, 0, out)) return true;
    }
    return descend(hay, needle, out);
  }

  // A needle composition with a single child only says where that child has
  // to sit: a row inside a column, or anywhere it is not merged with its
  // surroundings and not read as part of a column.
  static bool same_setting(CompositionKind hay, CompositionKind wanted, const SignTree& inside) {
    if (hay == wanted) return true;
    if (hay == CompositionKind::VerticalStack || wanted == CompositionKind::VerticalStack) {
      return false;
    }
    return !inside.is_composition(hay);
  }

  bool descend(const SignTree& hay, const Needle& needle, std::vector<Binding>& out) {
    for (const SignTree& c : hay.children()) {
      if (match(c, needle, out)) return true;
    }
    return false;
  }

  // Each needle component must sit in some haystack component. The
  // haystack components are not required to be distinct.
  bool match_superposition(const SignTree& hay, const Needle& needle, std::vector<Binding>& out) {
    const std::size_t mark = out.size();
    for (const SignTree& want : needle.kids) {
      bool found = false;
      for (const SignTree& c : hay.children()) {
        if (match(c, Needle::of(want), out)) {
          found = true;
          break;
        }
      }
      if (!found) {
        out.resize(mark);
        return false;
      }
    }
    return true;
  }

  // Needle children [i, n) go to haystack children [j, m) in order. A run of
  // consecutive needle children may share one haystack child, in which case
  // that child has to encompass the run as a stack of its own.
  bool assign(const SignTree& hay, const Needle& needle, std::size_t i, std::size_t j,
              std::vector<Binding>& out) {
    const std::size_t n = needle.kids.size();
    if (i == n) return true;
    const auto hay_kids = hay.children();
    const AssignKey key{&hay, needle.node, needle.kids.data(), n, i, j};
    if (assign_failed_.count(key)) return false;
    const std::size_t mark = out.size();
    for (std::size_t at = j; at < hay_kids.size(); ++at) {
      for (std::size_t end = i + 1; end <= n; ++end) {
        const Needle part = Needle::group(needle.kind, needle.kids.subspan(i, end - i));
        if (match(hay_kids[at], part, out) && assign(hay, needle, end, at + 1, out)) {
          return true;
        }
        out.resize(mark);
      }
    }
    assign_failed_.insert(key);
    return false;
  }

  std::unordered_map<const SignTree*, std::size_t> leaf_index_;
  std::set<Key> failed_;
  std::set<AssignKey> assign_failed_;
};

// ---------------------------------------------------------------------------
// Readings: plain trees that normalize to a given pattern. Some rewrite
// rules only fire once strokes are missing (two rows become equal length,
// a hook ends up at the edge of its row, a stack is left holding nothing
// but parallel strokes and a superposition), so a fragment of a sign can
// normalize into a shape the sign itself never takes. Matching every
// reading of the pattern undoes those rewrites.

inline bool is_padding(const SignTree& node) {
  if (!node.is_composition() || node.children().size() != 2) return false;
  return std::any_of(node.children().begin(), node.children().end(),
                     [](const SignTree& c) { return c.is_stroke(StrokeKind::Void); });
}

inline SignTree tidy(const SignTree& node) {
  if (node.is_leaf()) return node;
  const CompositionKind kind = node.composition_kind();
  std::vector<SignTree> kids;
  for (const SignTree& c : node.children()) {
    SignTree t = tidy(c);
    if (t.is_composition(kind)) {
      for (const SignTree& g : t.children()) kids.push_back(g);
    } else {
      kids.push_back(std::move(t));
    }
  }
  if (kind == CompositionKind::Superposition) {
    std::stable_sort(kids.begin(), kids.end(), [](const SignTree& a, const SignTree& b) {
      return canonical_less(serialize(a), serialize(b));
    });
  }
  if (kids.size() == 1) return kids.front();
  // Only the innermost setting of a fragment matters.
  if (kids.size() == 2 && (kids[0].is_stroke(StrokeKind::Void) || kids[1].is_stroke(StrokeKind::Void))) {
    const SignTree& inside = kids[0].is_stroke(StrokeKind::Void) ? kids[1] : kids[0];
    if (inside.is_leaf() || is_padding(inside)) return inside;
  }
  return SignTree::compose(kind, std::move(kids));
}

inline CompositionKind other_stack(CompositionKind kind) {
  return kind == CompositionKind::HorizontalStack ? CompositionKind::VerticalStack
                                                  : CompositionKind::HorizontalStack;
}

inline SignTree compose_or_single(CompositionKind kind, std::vector<SignTree> kids) {
  if (kids.size() == 1) return std::move(kids.front());
  return SignTree::compose(kind, std::move(kids));
}

// kids[0, at) + replacement + kids[at + width, n)
inline SignTree splice(CompositionKind kind, std::span<const SignTree> kids, std::size_t at,
                       std::size_t width, SignTree replacement) {
  std::vector<SignTree> out(kids.begin(), kids.begin() + static_cast<std::ptrdiff_t>(at));
  out.push_back(std::move(replacement));
  out.insert(out.end(), kids.begin() + static_cast<std::ptrdiff_t>(at + width), kids.end());
  return compose_or_single(kind, std::move(out));
}

inline void choose(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t>& pick,
                   const std::function<void(const std::vector<std::size_t>&)>& emit) {
  if (pick.size() == k) {
    emit(pick);
    return;
  }
  for (std::size_t i = from; i + (k - pick.size()) <= n; ++i) {
    pick.push_back(i);
    choose(n, k, i + 1, pick, emit);
    pick.pop_back();
  }
}

// A rewrite depends on the kind of the parent, so a fragment may only
// normalize to the pattern when it sits in some composition of its own.
// That composition is written with a void beside the fragment, which keeps
// it from being merged away; the void is dropped again before matching.
inline SignTree padded(CompositionKind kind, const SignTree& node) {
  return SignTree::compose(kind, {node, SignTree::stroke(StrokeKind::Void)});
}

// The settings that make a difference to a rewritten fragment: a row can
// be read in a column or left alone, anything else only needs protecting
// from being merged into a parent of its own kind.
inline std::vector<CompositionKind> settings_for(const SignTree& node) {
  if (node.is_composition(CompositionKind::HorizontalStack)) {
    return {CompositionKind::VerticalStack, CompositionKind::Superposition};
  }
  if (node.is_composition()) return {CompositionKind::HorizontalStack};
  return {};
}

// Removes voids and every composition left with a single child.
inline SignTree unpadded(const SignTree& node) {
  if (node.is_leaf()) return node;
  std::vector<SignTree> kids;
  for (const SignTree& c : node.children()) {
    if (!c.is_stroke(StrokeKind::Void)) kids.push_back(unpadded(c));
  }
  return tidy(compose_or_single(node.composition_kind(), std::move(kids)));
}

inline SignTree drop_voids(const SignTree& node) {
  if (node.is_leaf()) return node;
  std::vector<SignTree> kids;
  for (const SignTree& c : node.children()) {
    if (!c.is_stroke(StrokeKind::Void)) kids.push_back(drop_voids(c));
  }
  return SignTree::compose(node.composition_kind(), std::move(kids));
}

class ReadingGenerator {
 public:
  explicit ReadingGenerator(std::size_t budget) : budget_(budget) {}

  // Trees one inverse rewrite away from `node`, anywhere inside it.
  std::vector<SignTree> neighbours(const SignTree& node) {
    std::vector<SignTree> out;
    if (node.is_leaf()) return out;
    local(node, out);
    for (std::size_t i = 0, n = out.size(); i < n; ++i) {
      for (CompositionKind around : settings_for(out[i])) out.push_back(padded(around, out[i]));
    }
    const auto kids = node.children();
    for (std::size_t i = 0; i < kids.size() && out.size() < budget_; ++i) {
      for (SignTree& alt : neighbours(kids[i])) {
        out.push_back(splice(node.composition_kind(), kids, i, 1, std::move(alt)));
      }
    }
    return out;
  }

 private:
  void local(const SignTree& node, std::vector<SignTree>& out) {
    const CompositionKind kind = node.composition_kind();
    if (is_stack(kind)) {
      untranspose(node, out);
      if (kind == CompositionKind::HorizontalStack) unextract(node, out);
    } else {
      unabsorb(node, out);
    }
  }

  // A run of stacks of the other kind may have been a grid written the
  // other way round. A cell of that grid can itself be a stack of the
  // other kind, merged into its column, so each column is cut into the
  // same number of contiguous cells.
  void untranspose(const SignTree& node, std::vector<SignTree>& out) {
    const CompositionKind kind = node.composition_kind();
    const CompositionKind inner = other_stack(kind);
    const auto kids = node.children();
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (!kids[i].is_composition(inner)) continue;
      std::size_t shortest = kids[i].children().size();
      for (std::size_t j = i + 1; j < kids.size() && kids[j].is_composition(inner); ++j) {
        shortest = std::min(shortest, kids[j].children().size());
        const std::span<const SignTree> columns = kids.subspan(i, j - i + 1);
        for (std::size_t rows = 2; rows <= shortest; ++rows) {
          std::vector<std::vector<SignTree>> cells(rows);
          cut_columns(columns, 0, rows, cells, [&] {
            if (out.size() >= budget_) return;
            std::vector<SignTree> lines;
            for (const std::vector<SignTree>& line : cells) lines.push_back(SignTree::compose(kind, line));
            out.push_back(splice(kind, kids, i, j - i + 1, SignTree::compose(inner, std::move(lines))));
          });
        }
      }
    }
  }

  // Appends one cell per row taken from columns[c], for every way of
  // cutting it into `rows` contiguous pieces.
  void cut_columns(std::span<const SignTree> columns, std::size_t c, std::size_t rows,
                   std::vector<std::vector<SignTree>>& cells, const std::function<void()>& emit) {
    if (c == columns.size()) {
      emit();
      return;
    }
    const auto items = columns[c].children();
    const CompositionKind kind = columns[c].composition_kind();
    std::vector<std::size_t> cuts;
    choose(items.size() - 1, rows - 1, 0, cuts, [&](const std::vector<std::size_t>& pick) {
      std::size_t from = 0;
      for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t to = r + 1 < rows ? pick[r] + 1 : items.size();
        cells[r].push_back(compose_or_single(
            kind, {items.begin() + static_cast<std::ptrdiff_t>(from),
                   items.begin() + static_cast<std::ptrdiff_t>(to)}));
        from = to;
      }
      cut_columns(columns, c + 1, rows, cells, emit);
      for (auto& line : cells) line.pop_back();
    });
  }

  static bool is_hook_column(const SignTree& t) {
    if (t.is_stroke(StrokeKind::Winkelhaken)) return true;
    return t.is_composition(CompositionKind::VerticalStack) &&
           only_strokes(t, StrokeKind::Winkelhaken) &&
           std::all_of(t.children().begin(), t.children().end(),
                       [](const SignTree& c) { return c.is_leaf(); });
  }

  static std::vector<SignTree> hooks_of(const SignTree& column) {
    if (column.is_leaf()) return {column};
    return {column.children().begin(), column.children().end()};
  }

  static bool takes_hook(const SignTree& row) {
    if (row.is_stroke(StrokeKind::Horizontal)) return true;
    return row.is_composition(CompositionKind::HorizontalStack) &&
           std::any_of(row.children().begin(), row.children().end(),
                       [](const SignTree& c) { return c.is_stroke(StrokeKind::Horizontal); });
  }

  static SignTree attach(const SignTree& row, const SignTree* left, const SignTree* right) {
    std::vector<SignTree> cells;
    if (left) cells.push_back(*left);
    if (row.is_leaf()) {
      cells.push_back(row);
    } else {
      cells.insert(cells.end(), row.children().begin(), row.children().end());
    }
    if (right) cells.push_back(*right);
    return SignTree::compose(CompositionKind::HorizontalStack, std::move(cells));
  }

  // [{hooks}{rows}{hooks}] may have been a vertical stack whose rows had
  // those hooks at their ends.
  void unextract(const SignTree& node, std::vector<SignTree>& out) {
    const auto kids = node.children();
    for (std::size_t m = 0; m < kids.size(); ++m) {
      if (!kids[m].is_composition(CompositionKind::VerticalStack)) continue;
      const auto rows = kids[m].children();
      std::vector<std::size_t> eligible;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (takes_hook(rows[r])) eligible.push_back(r);
      }
      const bool can_left = m > 0 && is_hook_column(kids[m - 1]);
      const bool can_right = m + 1 < kids.size() && is_hook_column(kids[m + 1]);
      for (int sides = 1; sides <= 3; ++sides) {
        const bool use_left = sides & 1, use_right = sides & 2;
        if ((use_left && !can_left) || (use_right && !can_right)) continue;
        const std::vector<SignTree> left = use_left ? hooks_of(kids[m - 1]) : std::vector<SignTree>{};
        const std::vector<SignTree> right = use_right ? hooks_of(kids[m + 1]) : std::vector<SignTree>{};
        if (left.size() > eligible.size() || right.size() > eligible.size()) continue;
        const std::size_t at = use_left ? m - 1 : m;
        const std::size_t width = 1 + (use_left ? 1 : 0) + (use_right ? 1 : 0);
        std::vector<std::size_t> lp, rp;
        choose(eligible.size(), left.size(), 0, lp, [&](const std::vector<std::size_t>& lpick) {
          choose(eligible.size(), right.size(), 0, rp, [&](const std::vector<std::size_t>& rpick) {
            if (out.size() >= budget_) return;
            std::vector<const SignTree*> lhook(rows.size(), nullptr), rhook(rows.size(), nullptr);
            for (std::size_t k = 0; k < lpick.size(); ++k) lhook[eligible[lpick[k]]] = &left[k];
            for (std::size_t k = 0; k < rpick.size(); ++k) rhook[eligible[rpick[k]]] = &right[k];
            std::vector<SignTree> merged;
            for (std::size_t r = 0; r < rows.size(); ++r) {
              merged.push_back(lhook[r] || rhook[r] ? attach(rows[r], lhook[r], rhook[r]) : rows[r]);
            }
            out.push_back(splice(CompositionKind::HorizontalStack, kids, at, width,
                                 SignTree::compose(CompositionKind::VerticalStack, std::move(merged))));
          });
        });
      }
    }
  }

  // (X {hhh}) may have been {h (X h) h} and the like: parallel strokes that
  // a stack held next to a superposition. Only the strokes taken out of the
  // superposition can be nested stacks.
  void unabsorb(const SignTree& node, std::vector<SignTree>& out) {
    const auto kids = node.children();
    for (std::size_t ci = 0; ci < kids.size(); ++ci) {
      const SignTree& column = kids[ci];
      StrokeKind parallel;
      if (column.is_composition(CompositionKind::VerticalStack)) parallel = StrokeKind::Horizontal;
      else if (column.is_composition(CompositionKind::HorizontalStack)) parallel = StrokeKind::Vertical;
      else continue;
      if (!only_strokes(column, parallel)) continue;
      const CompositionKind kind = column.composition_kind();
      const auto strokes = column.children();
      auto leaves_only = [&](std::size_t from, std::size_t to) {
        return std::all_of(strokes.begin() + static_cast<std::ptrdiff_t>(from),
                           strokes.begin() + static_cast<std::ptrdiff_t>(to),
                           [](const SignTree& c) { return c.is_leaf(); });
      };
      // Equal components are interchangeable, so only how many of each go
      // inside matters.
      std::vector<std::vector<SignTree>> groups;
      std::map<std::string, std::size_t> group_of;
      for (std::size_t k = 0; k < kids.size(); ++k) {
        if (k == ci) continue;
        const auto [it, fresh] = group_of.try_emplace(serialize(kids[k]), groups.size());
        if (fresh) groups.emplace_back();
        groups[it->second].push_back(kids[k]);
      }
      const std::size_t n = strokes.size();
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j <= n; ++j) {
          if (j - i == n || !leaves_only(0, i) || !leaves_only(j, n)) continue;
          std::vector<std::size_t> take(groups.size(), 0);
          while (out.size() < budget_) {
            std::size_t g = 0;
            while (g < groups.size() && take[g] == groups[g].size()) take[g++] = 0;
            if (g == groups.size()) break;
            ++take[g];
            std::vector<SignTree> inner, rest;
            for (std::size_t k = 0; k < groups.size(); ++k) {
              for (std::size_t m = 0; m < groups[k].size(); ++m) {
                (m < take[k] ? inner : rest).push_back(groups[k][m]);
              }
            }
            inner.push_back(compose_or_single(
                kind, {strokes.begin() + static_cast<std::ptrdiff_t>(i),
                       strokes.begin() + static_cast<std::ptrdiff_t>(j)}));
            std::vector<SignTree> stack(strokes.begin(), strokes.begin() + static_cast<std::ptrdiff_t>(i));
            stack.push_back(SignTree::compose(CompositionKind::Superposition, std::move(inner)));
            stack.insert(stack.end(), strokes.begin() + static_cast<std::ptrdiff_t>(j), strokes.end());
            rest.push_back(SignTree::compose(kind, std::move(stack)));
            out.push_back(compose_or_single(CompositionKind::Superposition, std::move(rest)));
          }
        }
      }
    }
  }

  std::size_t budget_;
};

inline SignTree number_leaves(const SignTree& node, std::size_t& next) {
  if (node.is_leaf()) {
    SignTree leaf = node;
    leaf.set_origin(next++);
    return leaf;
  }
  std::vector<SignTree> kids;
  for (const SignTree& c : node.children()) kids.push_back(number_leaves(c, next));
  return SignTree::compose(node.composition_kind(), std::move(kids));
}

}  // namespace detail

/// A normalized search pattern together with every plain tree that
/// normalizes to it (its readings), the pattern itself first. Leaves of
/// each reading carry their document-order index in the pattern as origin.
class Pattern {
 public:
  static constexpr std::size_t kMaxReadings = 512;

  explicit Pattern(NormalizedTree tree, std::size_t max_readings = kMaxReadings)
      : tree_(std::move(tree)) {
    if (tree_.empty()) return;
    std::size_t next = 0;
    std::vector<SignTree> forms{detail::number_leaves(tree_.root(), next)};
    if (forms.front().is_composition(CompositionKind::HorizontalStack)) {
      forms.push_back(detail::padded(CompositionKind::VerticalStack, forms.front()));
    }
    std::set<std::string> seen;
    for (const SignTree& f : forms) seen.insert(serialize(f));
    detail::ReadingGenerator generator(max_readings);
    for (std::size_t i = 0; i < forms.size() && forms.size() < max_readings; ++i) {
      for (SignTree& candidate : generator.neighbours(forms[i])) {
        SignTree t = detail::tidy(candidate);
        if (!seen.insert(serialize(t)).second) continue;
        if (normalize(t, tree_.mode()) != tree_) continue;
        forms.push_back(std::move(t));
        if (forms.size() >= max_readings) break;
      }
    }
    // A reading that needs a setting is redundant next to the same reading
    // without it.
    std::set<std::string> accepted;
    for (const SignTree& f : forms) accepted.insert(serialize(f));
    std::set<std::string> kept;
    for (const SignTree& f : forms) {
      const std::string bare = serialize(detail::unpadded(f));
      if (bare != serialize(f) && accepted.count(bare)) continue;
      SignTree r = detail::drop_voids(f);
      if (kept.insert(serialize(r)).second) readings_.push_back(std::move(r));
    }
  }

  const NormalizedTree& tree() const noexcept { return tree_; }
  bool empty() const noexcept { return tree_.empty(); }
  std::span<const SignTree> readings() const noexcept { return readings_; }

 private:
  NormalizedTree tree_;
  std::vector<SignTree> readings_;
};

namespace detail {

inline MatchResult match_reading(const SignTree& haystack, const SignTree& reading) {
  MatchResult result;
  Matcher matcher(haystack);
  std::vector<Binding> bindings;
  if (!matcher.match(haystack, Matcher::Needle::of(reading), bindings)) return result;
  std::sort(bindings.begin(), bindings.end());
  result.matched = true;
  for (const Binding& b : bindings) result.matched_leaves.push_back(b.second);
  return result;
}

}  // namespace detail

/// Finds one way `needle` sits inside `haystack`. Both must be normalized in
/// the same mode. The witness reported is the first found, trying readings
/// in order and haystack children left to right.
///
/// An empty needle is encompassed by everything; an empty haystack
/// encompasses only the empty needle.
inline MatchResult match_strokes(const NormalizedTree& haystack, const Pattern& needle) {
  MatchResult result;
  if (needle.empty()) {
    result.matched = true;
    return result;
  }
  if (haystack.empty()) return result;
  for (const SignTree& reading : needle.readings()) {
    MatchResult m = detail::match_reading(haystack.root(), reading);
    if (m.matched) return m;
  }
  return result;
}

inline MatchResult match_strokes(const NormalizedTree& haystack, const NormalizedTree& needle) {
  return match_strokes(haystack, Pattern(needle));
}

inline bool encompasses(const NormalizedTree& haystack, const Pattern& needle) {
  return match_strokes(haystack, needle).matched;
}

inline bool encompasses(const NormalizedTree& haystack, const NormalizedTree& needle) {
  return match_strokes(haystack, needle).matched;
}

/// The relation without readings: `needle` exactly as written must sit in
/// `haystack`.
inline bool encompasses_literally(const NormalizedTree& haystack, const NormalizedTree& needle) {
  if (needle.empty()) return true;
  if (haystack.empty()) return false;
  std::size_t next = 0;
  return detail::match_reading(haystack.root(), detail::number_leaves(needle.root(), next)).matched;
}

/// Origin indices (leaves of the tree that was normalized) behind the
/// matched haystack leaves.
inline std::set<std::size_t> origin_leaves(const NormalizedTree& haystack,
                                           const MatchResult& match) {
  std::set<std::size_t> out;
  if (haystack.empty()) return out;
  const auto hay_leaves = leaves(haystack.root());
  for (std::size_t i : match.matched_leaves) {
    const std::size_t origin = hay_leaves.at(i)->origin();
    out.insert(origin != SignTree::kNoOrigin ? origin : i);
  }
  return out;
}

class EmptySelection : public std::invalid_argument {
 public:
  EmptySelection() : std::invalid_argument("EmptySelection: no leaves kept") {}
};

/// Copy of `tree` where every leaf whose document-order index is not in
/// `keep` becomes a void. Normalizing the result gives a pattern made of
/// the kept strokes with their mutual arrangement intact.
inline SignTree leaf_subset_pattern(const SignTree& tree, const std::set<std::size_t>& keep) {
  if (keep.empty()) throw EmptySelection();
  const std::size_t total = leaf_count(tree);
  if (*keep.rbegin() >= total) throw std::out_of_range("leaf_subset_pattern: bad leaf index");
  std::size_t next = 0;
  auto rebuild = [&](auto&& self, const SignTree& node) -> SignTree {
    if (node.is_leaf()) {
      return keep.count(next++) ? node : SignTree::stroke(StrokeKind::Void);
    }
    if (node.is_adjustment()) return SignTree::adjust(node.adjustment_kind(), self(self, node.child()));
    std::vector<SignTree> kids;
    for (const SignTree& c : node.children()) kids.push_back(self(self, c));
    return SignTree::compose(node.composition_kind(), std::move(kids));
  };
  return rebuild(rebuild, tree);
}

}  // namespace kadaru
