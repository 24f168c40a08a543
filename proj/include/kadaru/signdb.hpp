// Sign catalogue: loading, stroke census, and search by pattern.
//
// Database text format, one record per blank-line separated block:
//
//   # comment
//   index | name, name... | usage, usage... | label=code ; label=code ... [| provisional]
//
// A record may wrap onto continuation lines within its block. The first
// variant is the canonical shape of the sign.
#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kadaru/encoding.hpp"
#include "kadaru/encompass.hpp"
#include "kadaru/normalize.hpp"

namespace kadaru {

enum class Usage { Phonogram, Heterogram, Logogram, Semagram };

inline constexpr std::string_view to_string(Usage u) noexcept {
  switch (u) {
    case Usage::Phonogram: return "phonogram";
    case Usage::Heterogram: return "heterogram";
    case Usage::Logogram: return "logogram";
    case Usage::Semagram: return "semagram";
  }
  return "";
}

inline std::optional<Usage> usage_from_string(std::string_view s) noexcept {
  for (Usage u : {Usage::Phonogram, Usage::Heterogram, Usage::Logogram, Usage::Semagram}) {
    if (to_string(u) == s) return u;
  }
  return std::nullopt;
}

struct SignVariant {
  std::string label;
  SignCode code;
  NormalizedTree standard;
  NormalizedTree gottstein;

  const NormalizedTree& normalized(NormalizationMode mode) const noexcept {
    return mode == NormalizationMode::Gottstein ? gottstein : standard;
  }
};

struct SignRecord {
  int index = 0;
  std::vector<std::string> names;
  std::set<Usage> usages;
  std::vector<SignVariant> variants;
  bool provisional = false;

  const SignVariant& canonical() const { return variants.front(); }
};

/// Stroke census of a sign: a = verticals, b = horizontals,
/// c = downward diagonals and hooks, d = upward diagonals.
struct GottsteinCode {
  int a = 0;
  int b = 0;
  int c = 0;
  int d = 0;

  int category() const noexcept { return a + b + c + d; }

  /// Letters with a nonzero count, uppercase, in a-b-c-d order.
  std::string designation() const {
    std::string out;
    if (a) out += 'A';
    if (b) out += 'B';
    if (c) out += 'C';
    if (d) out += 'D';
    return out;
  }

  std::string to_string() const {
    std::string out;
    if (a) out += "a" + std::to_string(a);
    if (b) out += "b" + std::to_string(b);
    if (c) out += "c" + std::to_string(c);
    if (d) out += "d" + std::to_string(d);
    return out;
  }

  friend bool operator==(const GottsteinCode&, const GottsteinCode&) = default;
};

class EmptySign : public std::invalid_argument {
 public:
  EmptySign() : std::invalid_argument("EmptySign: the code has no strokes") {}
};

inline GottsteinCode gottstein_code(const SignCode& code) {
  const NormalizedTree n = normalize(code, NormalizationMode::Gottstein);
  if (n.empty()) throw EmptySign();
  GottsteinCode out;
  for (const SignTree* leaf : leaves(n.root())) {
    switch (leaf->stroke_kind()) {
      case StrokeKind::Vertical: ++out.a; break;
      case StrokeKind::Horizontal: ++out.b; break;
      case StrokeKind::DownDiagonal:
      case StrokeKind::Winkelhaken: ++out.c; break;
      case StrokeKind::UpDiagonal: ++out.d; break;
      default: break;
    }
  }
  return out;
}

/// Number of leaves in the Gottstein-mode normal form of the canonical
/// variant. Defined per sign, not per variant.
inline std::size_t complexity(const SignRecord& record) {
  const NormalizedTree& n = record.canonical().gottstein;
  return n.empty() ? 0 : leaf_count(n.root());
}

// ---------------------------------------------------------------------------

enum class DbErrorKind { ParseError, DuplicateIndex };

class DbError : public std::runtime_error {
 public:
  DbError(DbErrorKind kind, std::string record, const std::string& what)
      : std::runtime_error(std::string(kind == DbErrorKind::ParseError ? "ParseError"
                                                                        : "DuplicateIndex") +
                           " in record " + record + ": " + what),
        kind_(kind),
        record_(std::move(record)) {}

  DbErrorKind kind() const noexcept { return kind_; }
  const std::string& record() const noexcept { return record_; }

 private:
  DbErrorKind kind_;
  std::string record_;
};

/// Immutable set of sign records ordered by index.
class Catalogue {
 public:
  Catalogue() = default;
  explicit Catalogue(std::vector<SignRecord> records) : records_(std::move(records)) {
    std::sort(records_.begin(), records_.end(),
              [](const SignRecord& a, const SignRecord& b) { return a.index < b.index; });
    for (std::size_t i = 0; i < records_.size(); ++i) {
      if (i && records_[i].index == records_[i - 1].index) {
        throw DbError(DbErrorKind::DuplicateIndex, std::to_string(records_[i].index),
                      "index used twice");
      }
      complexity_.push_back(complexity(records_[i]));
    }
  }

  const std::vector<SignRecord>& records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }

  const SignRecord* find(int index) const {
    auto it = std::lower_bound(records_.begin(), records_.end(), index,
                               [](const SignRecord& r, int i) { return r.index < i; });
    return it != records_.end() && it->index == index ? &*it : nullptr;
  }

  std::size_t complexity_of(const SignRecord& record) const {
    return complexity_.at(static_cast<std::size_t>(&record - records_.data()));
  }

 private:
  std::vector<SignRecord> records_;
  std::vector<std::size_t> complexity_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  for (;;) {
    const std::size_t at = s.find(sep);
    out.push_back(trim(s.substr(0, at)));
    if (at == std::string_view::npos) return out;
    s.remove_prefix(at + 1);
  }
}

inline SignRecord parse_record(std::string_view block, std::size_t block_no) {
  const auto fields = split(block, '|');
  std::string id = fields.empty() || fields[0].empty() ? "#" + std::to_string(block_no)
                                                       : std::string(fields[0]);
  auto fail = [&](const std::string& what) -> DbError {
    return DbError(DbErrorKind::ParseError, id, what);
  };
  if (fields.size() != 4 && fields.size() != 5) {
    throw fail("expected 4 or 5 '|'-separated fields, found " + std::to_string(fields.size()));
  }
  SignRecord rec;
  try {
    std::size_t used = 0;
    rec.index = std::stoi(std::string(fields[0]), &used);
    if (used != fields[0].size() || rec.index <= 0) throw std::invalid_argument("index");
  } catch (const std::exception&) {
    throw fail("index must be a positive integer");
  }
  for (std::string_view name : split(fields[1], ',')) {
    if (!name.empty()) rec.names.emplace_back(name);
  }
  if (rec.names.empty()) throw fail("no names");
  for (std::string_view u : split(fields[2], ',')) {
    if (u.empty()) continue;
    auto usage = usage_from_string(u);
    if (!usage) throw fail("unknown usage '" + std::string(u) + "'");
    rec.usages.insert(*usage);
  }
  for (std::string_view v : split(fields[3], ';')) {
    if (v.empty()) continue;
    const std::size_t eq = v.find('=');
    if (eq == std::string_view::npos) throw fail("variant needs label=code");
    SignVariant variant;
    variant.label = std::string(trim(v.substr(0, eq)));
    const std::string_view code = trim(v.substr(eq + 1));
    try {
      variant.code = parse(code);
    } catch (const ParseError& e) {
      throw fail("variant '" + variant.label + "': " + e.what());
    }
    variant.standard = normalize(variant.code, NormalizationMode::Standard);
    variant.gottstein = normalize(variant.code, NormalizationMode::Gottstein);
    rec.variants.push_back(std::move(variant));
  }
  if (rec.variants.empty()) throw fail("no variants");
  if (fields.size() == 5) {
    for (std::string_view flag : split(fields[4], ',')) {
      if (flag == "provisional") rec.provisional = true;
      else if (!flag.empty()) throw fail("unknown flag '" + std::string(flag) + "'");
    }
  }
  return rec;
}

}  // namespace detail

inline Catalogue load_db(std::string_view text) {
  std::vector<SignRecord> records;
  std::string block;
  std::size_t block_no = 0;
  auto flush = [&] {
    if (detail::trim(block).empty()) return;
    records.push_back(detail::parse_record(block, ++block_no));
    block.clear();
  };
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    const std::string_view t = detail::trim(line);
    if (t.empty()) {
      flush();
    } else if (t.front() != '#') {
      if (!block.empty()) block += ' ';
      block += t;
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  flush();
  return Catalogue(std::move(records));
}

inline Catalogue load_db_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open database '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_db(ss.str());
}

/// Writes a catalogue back out in the database format.
inline std::string format_db(const Catalogue& db) {
  std::string out;
  for (const SignRecord& r : db.records()) {
    if (!out.empty()) out += '\n';
    out += std::to_string(r.index) + " | ";
    for (std::size_t i = 0; i < r.names.size(); ++i) out += (i ? ", " : "") + r.names[i];
    out += " | ";
    bool first = true;
    for (Usage u : r.usages) {
      out += (first ? "" : ", ") + std::string(to_string(u));
      first = false;
    }
    out += " | ";
    for (std::size_t i = 0; i < r.variants.size(); ++i) {
      out += (i ? " ; " : "") + r.variants[i].label + "=" + serialize(r.variants[i].code);
    }
    if (r.provisional) out += " | provisional";
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Search

enum class SortKey { Index, Usage, Complexity };

inline std::optional<SortKey> sort_key_from_string(std::string_view s) noexcept {
  if (s == "index") return SortKey::Index;
  if (s == "usage") return SortKey::Usage;
  if (s == "complexity") return SortKey::Complexity;
  return std::nullopt;
}

inline constexpr std::size_t kMaxPatternLeaves = 64;

enum class SearchErrorKind { EmptyPattern, PatternTooLarge };

class SearchError : public std::invalid_argument {
 public:
  SearchError(SearchErrorKind kind, const std::string& what)
      : std::invalid_argument(what), kind_(kind) {}
  SearchErrorKind kind() const noexcept { return kind_; }
  std::string_view kind_name() const noexcept {
    return kind_ == SearchErrorKind::EmptyPattern ? "EmptyPattern" : "PatternTooLarge";
  }

 private:
  SearchErrorKind kind_;
};

struct SearchHit {
  const SignRecord* record = nullptr;
  std::size_t variant = 0;
  MatchResult match;
  /// Leaves of the stored variant code (document order) behind the match.
  std::set<std::size_t> highlight;

  const SignVariant& matched_variant() const { return record->variants.at(variant); }
};

struct SearchQuery {
  SignCode pattern;
  NormalizationMode mode = NormalizationMode::Standard;
  std::optional<std::string> name_filter;
  SortKey sort = SortKey::Index;
};

namespace detail {

// Lower case for ASCII and for the two-byte Latin-1 and Latin Extended-A
// letters, which covers Š and the accented vowels of transliterations.
// Anything else passes through unchanged.
inline std::string fold_case(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto b = static_cast<unsigned char>(s[i]);
    if (b < 0x80) {
      out += static_cast<char>(std::tolower(b));
      continue;
    }
    if ((b & 0xE0) != 0xC0 || i + 1 >= s.size()) {
      out += s[i];
      continue;
    }
    const auto b2 = static_cast<unsigned char>(s[i + 1]);
    char32_t cp = static_cast<char32_t>(((b & 0x1F) << 6) | (b2 & 0x3F));
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) {
      cp += 0x20;
    } else if (cp >= 0x100 && cp <= 0x17F) {
      const bool odd_upper = (cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E);
      if (odd_upper ? cp % 2 == 1 : cp % 2 == 0 && cp != 0x130 && cp != 0x138) ++cp;
    }
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
    ++i;
  }
  return out;
}

inline bool name_matches(const SignRecord& r, const std::string& needle_lower) {
  return std::any_of(r.names.begin(), r.names.end(), [&](const std::string& n) {
    return fold_case(n).find(needle_lower) != std::string::npos;
  });
}

}  // namespace detail

/// Every sign with a variant that encompasses the pattern, one hit per sign.
/// When several variants match, the one binding the most strokes wins,
/// then the earliest.
inline std::vector<SearchHit> search(const Catalogue& db, const SearchQuery& query) {
  const NormalizedTree pattern = normalize(query.pattern, query.mode);
  if (pattern.empty()) throw SearchError(SearchErrorKind::EmptyPattern, "EmptyPattern: the pattern has no strokes");
  const std::size_t size = leaf_count(pattern.root());
  if (size > kMaxPatternLeaves) {
    throw SearchError(SearchErrorKind::PatternTooLarge,
                      "PatternTooLarge: " + std::to_string(size) + " strokes, limit " +
                          std::to_string(kMaxPatternLeaves));
  }
  const Pattern readings(pattern);
  const std::optional<std::string> filter =
      query.name_filter && !query.name_filter->empty()
          ? std::optional<std::string>(detail::fold_case(*query.name_filter))
          : std::nullopt;

  std::vector<SearchHit> hits;
  for (const SignRecord& r : db.records()) {
    if (filter && !detail::name_matches(r, *filter)) continue;
    std::optional<SearchHit> best;
    for (std::size_t v = 0; v < r.variants.size(); ++v) {
      const NormalizedTree& hay = r.variants[v].normalized(query.mode);
      MatchResult m = match_strokes(hay, readings);
      if (!m.matched) continue;
      if (!best || m.leaf_set().size() > best->match.leaf_set().size()) {
        SearchHit hit;
        hit.record = &r;
        hit.variant = v;
        hit.highlight = origin_leaves(hay, m);
        hit.match = std::move(m);
        best = std::move(hit);
      }
    }
    if (best) hits.push_back(std::move(*best));
  }

  auto usage_rank = [](const SignRecord& r) {
    return r.usages.empty() ? 99 : static_cast<int>(*r.usages.begin());
  };
  std::stable_sort(hits.begin(), hits.end(), [&](const SearchHit& a, const SearchHit& b) {
    switch (query.sort) {
      case SortKey::Usage:
        if (usage_rank(*a.record) != usage_rank(*b.record)) {
          return usage_rank(*a.record) < usage_rank(*b.record);
        }
        break;
      case SortKey::Complexity: {
        const std::size_t ca = db.complexity_of(*a.record), cb = db.complexity_of(*b.record);
        if (ca != cb) return ca < cb;
        break;
      }
      case SortKey::Index: break;
    }
    return a.record->index < b.record->index;
  });
  return hits;
}

}  // namespace kadaru
