// Random and exhaustive tree generators for property tests.
#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "kadaru/encoding.hpp"
#include "kadaru/normalize.hpp"

namespace gen {

using kadaru::AdjustmentKind;
using kadaru::CompositionKind;
using kadaru::SignTree;
using kadaru::StrokeKind;
using kadaru::StrokeModifiers;

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& items) {
  return items[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(items.size()) - 1))];
}

struct TreeShape {
  int max_depth = 6;
  int max_arity = 5;
  std::vector<StrokeKind> strokes{StrokeKind::Horizontal, StrokeKind::Vertical,
                                  StrokeKind::DownDiagonal, StrokeKind::UpDiagonal,
                                  StrokeKind::Winkelhaken, StrokeKind::Void,
                                  StrokeKind::Wildcard, StrokeKind::Cursor};
  bool modifiers = true;
  bool adjustments = true;
  double leaf_bias = 0.35;
};

inline StrokeModifiers random_modifiers(Rng& rng) {
  StrokeModifiers m;
  m.shorten_head = chance(rng, 0.15);
  m.shorten_tail = chance(rng, 0.15);
  m.damaged = chance(rng, 0.1);
  m.highlighted = chance(rng, 0.1);
  m.inverted = chance(rng, 0.05);
  const int r = uniform(rng, 0, 9);
  m.heads = r == 0 ? 2 : r == 1 ? 3 : 1;
  return m;
}

inline SignTree random_tree(Rng& rng, const TreeShape& shape, int depth = 0) {
  const bool leaf = depth >= shape.max_depth || chance(rng, shape.leaf_bias + 0.1 * depth);
  SignTree node = SignTree::stroke(StrokeKind::Void);
  if (leaf) {
    const StrokeKind kind = pick(rng, shape.strokes);
    StrokeModifiers mods = shape.modifiers ? random_modifiers(rng) : StrokeModifiers{};
    const bool heads_ok = kind == StrokeKind::Horizontal || kind == StrokeKind::Vertical ||
                          kind == StrokeKind::DownDiagonal || kind == StrokeKind::UpDiagonal;
    if (!heads_ok) mods.heads = 1;
    node = SignTree::stroke(kind, mods);
  } else {
    const auto kind = static_cast<CompositionKind>(uniform(rng, 0, 2));
    std::vector<SignTree> kids;
    const int arity = uniform(rng, 0, shape.max_arity);
    for (int i = 0; i < arity; ++i) kids.push_back(random_tree(rng, shape, depth + 1));
    node = SignTree::compose(kind, std::move(kids));
  }
  if (shape.adjustments && chance(rng, 0.1)) {
    static const std::vector<AdjustmentKind> adjustments{AdjustmentKind::Tenu, AdjustmentKind::Expand,
                                                         AdjustmentKind::Margin,
                                                         AdjustmentKind::Restrict};
    node = SignTree::adjust(pick(rng, adjustments), std::move(node));
  }
  return node;
}

/// Adds purely aesthetic decoration: shortening, damage, highlight and
/// inversion marks on strokes, E/M/R wrappers, and voids between siblings.
inline SignTree decorate(Rng& rng, const SignTree& t) {
  SignTree out = SignTree::stroke(StrokeKind::Void);
  if (t.is_leaf()) {
    StrokeModifiers m = t.modifiers();
    m.shorten_head = m.shorten_head || chance(rng, 0.3);
    m.shorten_tail = m.shorten_tail || chance(rng, 0.3);
    m.damaged = m.damaged || chance(rng, 0.2);
    m.highlighted = m.highlighted || chance(rng, 0.2);
    out = SignTree::stroke(t.stroke_kind(), m);
  } else if (t.is_adjustment()) {
    out = SignTree::adjust(t.adjustment_kind(), decorate(rng, t.child()));
  } else {
    std::vector<SignTree> kids;
    for (const SignTree& c : t.children()) {
      if (chance(rng, 0.2)) kids.push_back(SignTree::stroke(StrokeKind::Void));
      kids.push_back(decorate(rng, c));
    }
    if (chance(rng, 0.2)) kids.push_back(SignTree::stroke(StrokeKind::Void));
    out = SignTree::compose(t.composition_kind(), std::move(kids));
  }
  if (chance(rng, 0.15)) {
    static const std::vector<AdjustmentKind> aesthetic{AdjustmentKind::Expand, AdjustmentKind::Margin,
                                                       AdjustmentKind::Restrict};
    out = SignTree::adjust(pick(rng, aesthetic), std::move(out));
  }
  return out;
}

/// Removes every stroke modifier and E/M/R wrapper, keeping structure.
inline SignTree strip_aesthetics(const SignTree& t) {
  if (t.is_leaf()) {
    StrokeModifiers m;
    m.heads = t.modifiers().heads;
    return SignTree::stroke(t.stroke_kind(), m);
  }
  if (t.is_adjustment()) {
    if (t.adjustment_kind() == AdjustmentKind::Tenu) {
      return SignTree::adjust(AdjustmentKind::Tenu, strip_aesthetics(t.child()));
    }
    return strip_aesthetics(t.child());
  }
  std::vector<SignTree> kids;
  for (const SignTree& c : t.children()) kids.push_back(strip_aesthetics(c));
  return SignTree::compose(t.composition_kind(), std::move(kids));
}

/// Random reordering of the children of every superposition.
inline SignTree shuffle_superpositions(Rng& rng, const SignTree& t) {
  if (t.is_leaf()) return t;
  if (t.is_adjustment()) return SignTree::adjust(t.adjustment_kind(), shuffle_superpositions(rng, t.child()));
  std::vector<SignTree> kids;
  for (const SignTree& c : t.children()) kids.push_back(shuffle_superpositions(rng, c));
  if (t.composition_kind() == CompositionKind::Superposition) std::shuffle(kids.begin(), kids.end(), rng);
  return SignTree::compose(t.composition_kind(), std::move(kids));
}

/// Strings built mostly from the syntax alphabet, for parser fuzzing.
inline std::string random_text(Rng& rng, std::size_t max_len) {
  static const std::string alphabet = "hvduc0*|[]{}()'\"23#!?TEMRNPSLWX ,hvhv[]{}()";
  std::string out;
  const std::size_t len = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(max_len)));
  for (std::size_t i = 0; i < len; ++i) {
    out += chance(rng, 0.01) ? static_cast<char>(uniform(rng, 1, 127)) : pick(rng, std::vector<char>(alphabet.begin(), alphabet.end()));
  }
  return out;
}

/// All plain trees over `strokes` with exactly `leaves` leaves where every
/// composition has at least two children and no composition directly
/// contains one of its own kind.
inline void enumerate_plain(int leaves, const std::vector<StrokeKind>& strokes,
                            std::optional<CompositionKind> parent, std::vector<SignTree>& out);

namespace detail {

// Ordered sequences of >= 2 subtrees with `leaves` leaves in total.
inline void enumerate_sequences(int leaves, int min_parts, const std::vector<StrokeKind>& strokes,
                                CompositionKind kind, std::vector<SignTree>& prefix,
                                std::vector<std::vector<SignTree>>& out) {
  if (leaves == 0) {
    if (static_cast<int>(prefix.size()) >= min_parts) out.push_back(prefix);
    return;
  }
  for (int first = 1; first <= leaves; ++first) {
    if (first == leaves && static_cast<int>(prefix.size()) + 1 < min_parts) continue;
    std::vector<SignTree> heads;
    enumerate_plain(first, strokes, kind, heads);
    for (SignTree& h : heads) {
      prefix.push_back(std::move(h));
      enumerate_sequences(leaves - first, min_parts, strokes, kind, prefix, out);
      prefix.pop_back();
    }
  }
}

}  // namespace detail

inline void enumerate_plain(int leaves, const std::vector<StrokeKind>& strokes,
                            std::optional<CompositionKind> parent, std::vector<SignTree>& out) {
  if (leaves == 1) {
    for (StrokeKind k : strokes) out.push_back(SignTree::stroke(k));
    return;
  }
  for (CompositionKind kind : {CompositionKind::HorizontalStack, CompositionKind::VerticalStack,
                               CompositionKind::Superposition}) {
    if (parent && *parent == kind) continue;
    std::vector<std::vector<SignTree>> seqs;
    std::vector<SignTree> prefix;
    detail::enumerate_sequences(leaves, 2, strokes, kind, prefix, seqs);
    for (auto& s : seqs) out.push_back(SignTree::compose(kind, std::move(s)));
  }
}

/// Distinct normalized forms of every plain tree with 1..max_leaves leaves.
inline std::vector<kadaru::NormalizedTree> normalized_corpus(int max_leaves,
                                                             const std::vector<StrokeKind>& strokes) {
  std::set<std::string> seen;
  std::vector<kadaru::NormalizedTree> out;
  for (int n = 1; n <= max_leaves; ++n) {
    std::vector<SignTree> trees;
    enumerate_plain(n, strokes, std::nullopt, trees);
    for (const SignTree& t : trees) {
      kadaru::NormalizedTree norm = kadaru::normalize(t);
      if (seen.insert(kadaru::serialize(norm)).second) out.push_back(std::move(norm));
    }
  }
  return out;
}

}  // namespace gen
