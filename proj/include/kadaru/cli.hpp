// Command-line front end. Every subcommand prints exactly what the library
// call returns; exit status 0 on success, 1 on a domain error, 2 on bad
// usage.
#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kadaru/encoding.hpp"
#include "kadaru/encompass.hpp"
#include "kadaru/layout.hpp"
#include "kadaru/normalize.hpp"
#include "kadaru/seed.hpp"
#include "kadaru/signdb.hpp"
#include "kadaru/style.hpp"
#include "kadaru/svg.hpp"
#include "kadaru/typeset.hpp"

namespace kadaru {

enum ExitCode { kExitOk = 0, kExitDomain = 1, kExitUsage = 2 };

namespace cli {

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::vector<std::string> style_names() {
  std::vector<std::string> out;
  for (const RenderStyle& s : style_presets()) out.push_back(s.name);
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file || !(file << text)) throw DomainError("cannot write " + out_path);
}

inline std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

template <typename Set>
std::string join_indices(const Set& values) {
  std::vector<std::string> parts;
  for (auto v : values) parts.push_back(std::to_string(v));
  return join(parts, ",");
}

inline Catalogue open_db(const std::string& path) {
  if (!path.empty()) return load_db_file(path);
  if (const char* env = std::getenv("KADARU_DB"); env && *env) return load_db_file(env);
  return seed_catalogue();
}

}  // namespace cli

/// Runs one command line. Output goes to `out`, diagnostics to `err`.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"kadaru: encode, render, normalize and search cuneiform signs", "kadaru"};
  app.require_subcommand(1);

  std::string code, style = default_style().name, out_path, mode_name = "standard";
  std::string haystack, needle, pattern, db_path, sort_name = "index", input;
  std::optional<std::string> name_filter;

  const auto styles = cli::style_names();
  const std::vector<std::string> modes{"standard", "gottstein"};

  auto* render = app.add_subcommand("render", "Render a sign code as SVG");
  render->add_option("--code", code, "kadaru code")->required();
  render->add_option("--style", style, "Style preset")->check(CLI::IsMember(styles));
  render->add_option("--out", out_path, "Write to this file instead of stdout");

  auto* norm = app.add_subcommand("normalize", "Print the normal form of a code");
  norm->add_option("--code", code, "kadaru code")->required();
  norm->add_option("--mode", mode_name, "standard or gottstein")->check(CLI::IsMember(modes));

  auto* match = app.add_subcommand("match", "Does the haystack encompass the needle?");
  match->add_option("--haystack", haystack, "Sign code")->required();
  match->add_option("--needle", needle, "Pattern code")->required();
  match->add_option("--mode", mode_name, "standard or gottstein")->check(CLI::IsMember(modes));

  auto* gott = app.add_subcommand("gottstein", "Print the Gottstein code of a sign");
  gott->add_option("--code", code, "kadaru code")->required();

  auto* find = app.add_subcommand("search", "Search the sign database by pattern");
  find->add_option("--pattern", pattern, "Pattern code")->required();
  find->add_option("--db", db_path, "Database file (default: $KADARU_DB, then the built-in seed)");
  find->add_option("--sort", sort_name, "index, usage or complexity")
      ->check(CLI::IsMember({"index", "usage", "complexity"}));
  find->add_option("--name", name_filter, "Only signs with a name containing this");
  find->add_option("--mode", mode_name, "standard or gottstein")->check(CLI::IsMember(modes));

  auto* set = app.add_subcommand("typeset", "Typeset a document of sign codes as one SVG");
  set->add_option("--input", input, "Document: one line per tablet line, '/' between words")
      ->required();
  set->add_option("--out", out_path, "Write to this file instead of stdout");
  set->add_option("--style", style, "Style preset")->check(CLI::IsMember(styles));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  const RenderStyle& chosen = *find_style(style);
  const NormalizationMode mode = *mode_from_string(mode_name);
  try {
    if (*render) {
      cli::emit(render_svg(layout(parse(code), chosen), chosen), out_path, out);
    } else if (*norm) {
      const NormalizedTree n = normalize(parse(code), mode);
      out << serialize(n) << '\n';
      if (n.empty()) return kExitDomain;
    } else if (*match) {
      const NormalizedTree hay = normalize(parse(haystack), mode);
      const MatchResult m = match_strokes(hay, normalize(parse(needle), mode));
      if (!m.matched) {
        out << "no\n";
        return kExitDomain;
      }
      const std::string matched = cli::join_indices(origin_leaves(hay, m));
      out << (matched.empty() ? "yes" : "yes " + matched) << '\n';
    } else if (*gott) {
      out << gottstein_code(parse(code)).to_string() << '\n';
    } else if (*find) {
      if (pattern.find_first_not_of(" \t\r\n") == std::string::npos) {
        err << "search: --pattern must not be empty\n";
        return kExitUsage;
      }
      SearchQuery query;
      query.pattern = parse(pattern);
      query.mode = mode;
      query.name_filter = name_filter;
      query.sort = *sort_key_from_string(sort_name);
      const Catalogue db = cli::open_db(db_path);
      out << "index\tnames\tusages\tcomplexity\tvariant\tmatched\n";
      for (const SearchHit& hit : search(db, query)) {
        const SignRecord& r = *hit.record;
        std::vector<std::string> usages;
        for (Usage u : r.usages) usages.emplace_back(to_string(u));
        out << r.index << '\t' << cli::join(r.names, ",") << '\t' << cli::join(usages, ",") << '\t'
            << db.complexity_of(r) << '\t' << hit.matched_variant().label << '\t'
            << cli::join_indices(hit.highlight) << '\n';
      }
    } else if (*set) {
      const auto lines = parse_typeset_document(cli::read_file(input));
      cli::emit(typeset(lines, chosen), out_path, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace kadaru
