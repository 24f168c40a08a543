// Request handlers behind the HTTP API. Transport-free: each handler takes
// already-decoded inputs and returns status, content type and body.
#pragma once

#include <charconv>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "kadaru/encoding.hpp"
#include "kadaru/layout.hpp"
#include "kadaru/normalize.hpp"
#include "kadaru/signdb.hpp"
#include "kadaru/style.hpp"
#include "kadaru/svg.hpp"

namespace kadaru {

struct Response {
  int status = 200;
  std::string content_type;
  std::string body;
};

inline constexpr std::string_view kSvgType = "image/svg+xml";
inline constexpr std::string_view kJsonType = "application/json";

/// Failure document: {"error": {"kind", "message", "offset"?}}.
inline Response api_error(int status, std::string_view kind, std::string_view message,
                          std::optional<std::size_t> offset = std::nullopt) {
  nlohmann::json err{{"kind", kind}, {"message", message}};
  if (offset) err["offset"] = *offset;
  return {status, std::string(kJsonType), nlohmann::json{{"error", err}}.dump()};
}

namespace detail {

inline Response json_response(const nlohmann::json& doc) {
  return {200, std::string(kJsonType), doc.dump()};
}

inline Response parse_failure(const ParseError& e) {
  return api_error(400, to_string(e.kind()), e.what(), e.offset());
}

inline nlohmann::json usage_list(const SignRecord& r) {
  nlohmann::json out = nlohmann::json::array();
  for (Usage u : r.usages) out.push_back(to_string(u));
  return out;
}

// "1,4, 7" -> {1, 4, 7}; nullopt on anything else.
inline std::optional<std::set<std::size_t>> parse_indices(std::string_view text) {
  std::set<std::size_t> out;
  if (detail::trim(text).empty()) return out;
  for (std::string_view part : detail::split(text, ',')) {
    part = detail::trim(part);
    std::size_t v = 0;
    const auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || end != part.data() + part.size() || part.empty()) return std::nullopt;
    out.insert(v);
  }
  return out;
}

}  // namespace detail

/// Stateless handlers over an immutable catalogue; safe to call from many
/// threads at once.
class Service {
 public:
  explicit Service(const Catalogue& db) : db_(db) {}

  const Catalogue& catalogue() const noexcept { return db_; }

  /// GET /api/render
  Response render(const std::optional<std::string>& code, const std::optional<std::string>& style,
                  const std::optional<std::string>& highlight) const {
    if (!code) return api_error(400, "MissingParameter", "code is required");
    const std::optional<RenderStyle> chosen = pick_style(style);
    if (!chosen) return api_error(400, "UnknownStyle", "no style named '" + *style + "'");
    std::set<std::size_t> lit;
    if (highlight) {
      auto parsed = detail::parse_indices(*highlight);
      if (!parsed) return api_error(400, "BadHighlight", "highlight must be a comma-separated list of leaf indices");
      lit = std::move(*parsed);
    }
    try {
      const SignCode sign = parse(*code);
      return {200, std::string(kSvgType), render_svg(layout(sign, *chosen), *chosen, lit)};
    } catch (const ParseError& e) {
      return detail::parse_failure(e);
    } catch (const LayoutError& e) {
      return api_error(422, "LayoutError", e.what());
    }
  }

  /// POST /api/search with a JSON body.
  Response search(std::string_view body) const {
    const nlohmann::json doc = nlohmann::json::parse(body, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
      return api_error(400, "BadRequest", "body must be a JSON object");
    }
    std::map<std::string, std::string> fields;
    for (const char* key : {"pattern", "mode", "name_filter", "sort", "style"}) {
      const auto it = doc.find(key);
      if (it == doc.end() || it->is_null()) continue;
      if (!it->is_string()) return api_error(400, "BadRequest", std::string(key) + " must be a string");
      fields[key] = it->get<std::string>();
    }
    const auto field = [&](const char* key) -> std::optional<std::string> {
      const auto it = fields.find(key);
      if (it == fields.end()) return std::nullopt;
      return it->second;
    };
    const std::optional<std::string> pattern = field("pattern");
    const std::optional<std::string> mode = field("mode");
    const std::optional<std::string> name = field("name_filter");
    const std::optional<std::string> sort = field("sort");
    const std::optional<std::string> style = field("style");
    if (!pattern || detail::trim(*pattern).empty()) {
      return api_error(400, "EmptyPattern", "EmptyPattern: the pattern has no strokes");
    }

    SearchQuery query;
    if (mode) {
      const auto m = mode_from_string(*mode);
      if (!m) return api_error(400, "BadRequest", "mode must be standard or gottstein");
      query.mode = *m;
    }
    if (sort) {
      const auto s = sort_key_from_string(*sort);
      if (!s) return api_error(400, "BadRequest", "sort must be index, usage or complexity");
      query.sort = *s;
    }
    query.name_filter = name;
    const std::optional<RenderStyle> chosen = pick_style(style);
    if (!chosen) return api_error(400, "UnknownStyle", "no style named '" + *style + "'");

    try {
      query.pattern = parse(*pattern);
      nlohmann::json results = nlohmann::json::array();
      for (const SearchHit& hit : kadaru::search(db_, query)) {
        const SignRecord& r = *hit.record;
        const SignVariant& v = hit.matched_variant();
        results.push_back({{"index", r.index},
                           {"names", r.names},
                           {"usages", detail::usage_list(r)},
                           {"complexity", db_.complexity_of(r)},
                           {"variant_label", v.label},
                           {"svg", render_svg(layout(v.code, *chosen), *chosen, hit.highlight)},
                           {"matched_leaf_indices", hit.highlight}});
      }
      return detail::json_response({{"results", results}});
    } catch (const ParseError& e) {
      return detail::parse_failure(e);
    } catch (const SearchError& e) {
      return api_error(400, e.kind_name(), e.what());
    } catch (const LayoutError& e) {
      return api_error(422, "LayoutError", e.what());
    }
  }

  /// GET /api/signs
  Response signs() const {
    nlohmann::json list = nlohmann::json::array();
    for (const SignRecord& r : db_.records()) {
      nlohmann::json labels = nlohmann::json::array();
      for (const SignVariant& v : r.variants) labels.push_back(v.label);
      list.push_back({{"index", r.index},
                      {"names", r.names},
                      {"usages", detail::usage_list(r)},
                      {"complexity", db_.complexity_of(r)},
                      {"variant_labels", labels},
                      {"provisional", r.provisional}});
    }
    return detail::json_response({{"signs", list}});
  }

  /// GET /api/signs/{index}
  Response sign(std::string_view index_text) const {
    int index = 0;
    const auto [end, ec] =
        std::from_chars(index_text.data(), index_text.data() + index_text.size(), index);
    const SignRecord* r = ec == std::errc() && end == index_text.data() + index_text.size()
                              ? db_.find(index)
                              : nullptr;
    if (!r) return api_error(404, "NotFound", "no sign with index " + std::string(index_text));

    const RenderStyle& style = default_style();
    nlohmann::json variants = nlohmann::json::array();
    try {
      for (const SignVariant& v : r->variants) {
        variants.push_back({{"label", v.label},
                            {"code", serialize(v.code)},
                            {"normalized", serialize(v.standard)},
                            {"svg", render_svg(layout(v.code, style), style)}});
      }
    } catch (const LayoutError& e) {
      return api_error(422, "LayoutError", e.what());
    }
    nlohmann::json gottstein = nullptr;
    try {
      gottstein = gottstein_code(r->variants.front().code).to_string();
    } catch (const EmptySign&) {
    }
    return detail::json_response({{"index", r->index},
                                  {"names", r->names},
                                  {"usages", detail::usage_list(*r)},
                                  {"complexity", db_.complexity_of(*r)},
                                  {"gottstein", gottstein},
                                  {"provisional", r->provisional},
                                  {"variants", variants}});
  }

 private:
  static std::optional<RenderStyle> pick_style(const std::optional<std::string>& name) {
    if (!name || name->empty()) return default_style();
    return find_style(*name);
  }

  const Catalogue& db_;
};

}  // namespace kadaru
