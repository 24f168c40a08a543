#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kadaru {

/// Drawing parameters. Sizes are fractions of the canvas height.
struct RenderStyle {
  std::string name = "classic";
  double stroke_head_size = 0.18;
  double stroke_line_width = 0.035;
  double stroke_gap = 0.05;  // free space kept around non-expanding strokes
  double margin_fraction = 0.12;
  double canvas_padding = 0.04;
  double diagonal_angle = 45.0;  // degrees below (or above) the horizontal
  double hatch_spacing = 0.03;
  std::string highlight_color = "#1f9d3a";
  std::string base_color = "#1b1b1b";
};

namespace detail {

inline std::vector<RenderStyle> make_presets() {
  std::vector<RenderStyle> out;
  out.push_back(RenderStyle{});

  RenderStyle bold;
  bold.name = "bold";
  bold.stroke_head_size = 0.24;
  bold.stroke_line_width = 0.06;
  bold.stroke_gap = 0.04;
  out.push_back(bold);

  RenderStyle light;
  light.name = "light";
  light.stroke_head_size = 0.14;
  light.stroke_line_width = 0.02;
  light.stroke_gap = 0.06;
  light.base_color = "#3b3b3b";
  out.push_back(light);

  RenderStyle clay;
  clay.name = "clay";
  clay.stroke_head_size = 0.2;
  clay.stroke_line_width = 0.04;
  clay.diagonal_angle = 40.0;
  clay.highlight_color = "#2a7fd4";
  clay.base_color = "#6b4226";
  out.push_back(clay);
  return out;
}

}  // namespace detail

/// Fixed named presets, in display order. The first one is the default.
inline const std::vector<RenderStyle>& style_presets() {
  static const std::vector<RenderStyle> presets = detail::make_presets();
  return presets;
}

inline const RenderStyle& default_style() { return style_presets().front(); }

inline std::optional<RenderStyle> find_style(std::string_view name) {
  for (const RenderStyle& s : style_presets()) {
    if (s.name == name) return s;
  }
  return std::nullopt;
}

}  // namespace kadaru
