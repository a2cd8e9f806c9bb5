#pragma once

#include <string>
#include <utility>
#include <vector>

#include "prismslice/json.hpp"
#include "prismslice/slice.hpp"

namespace prismslice {

inline constexpr const char* kChartSchemaVersion = "1.0";

Json chart_json(const ChartPage& page);
std::string chart_svg(const ChartPage& page);
std::string chart_text(const ChartPage& page);

// Column n holds the atom exponents of [n]_A!: (level r, count floor(n / p^{r+1})).
struct LegendreFigure {
  u64 p = 2;
  u64 n_max = 1;
  std::vector<std::vector<std::pair<unsigned, u64>>> columns;  // index n-1
};

LegendreFigure legendre_figure(u64 p, u64 n_max);
u64 column_height(const std::vector<std::pair<unsigned, u64>>& column);
Json legendre_json(const LegendreFigure& fig);
std::string legendre_svg(const LegendreFigure& fig);
std::string legendre_text(const LegendreFigure& fig);

}  // namespace prismslice
