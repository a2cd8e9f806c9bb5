#include "prismslice/chart.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "prismslice/errors.hpp"

namespace prismslice {

namespace {

// red for W, then one color per Phi-level
constexpr std::array<const char*, 8> kPalette{"#d62728", "#ff7f0e", "#e6c619", "#2ca02c",
                                              "#1f77b4", "#6a3d9a", "#8c564b", "#7f7f7f"};

const char* color_of(int level) { return kPalette[std::size_t(std::min(level, int(kPalette.size()) - 1))]; }

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

constexpr std::array<const char*, 6> kLevelGlyphs{"█", "▓", "▒", "░", "▞", "▚"};

}  // namespace

Json chart_json(const ChartPage& page) {
  Json j;
  j["schema_version"] = kChartSchemaVersion;
  j["p"] = page.p;
  j["ring_kind"] = to_string(page.ring);
  j["page"] = to_string(page.page);
  Json entries = Json::array();
  for (const auto& e : page.entries) {
    Json m = to_json(e.mackey);
    Json x;
    x["x"] = e.x;
    x["y"] = e.y;
    x["mackey"] = {{"kind", m["kind"]}, {"params", m["params"]}};
    x["hieroglyph"] = e.hieroglyph;
    x["color_level"] = e.color_level;
    if (e.fh) {
      x["f"] = e.fh->first;
      x["h"] = e.fh->second;
    }
    entries.push_back(x);
  }
  j["entries"] = entries;
  return j;
}

std::string chart_svg(const ChartPage& page) {
  int max_x = 0, max_y = 0, max_color = 0;
  for (const auto& e : page.entries) {
    max_x = std::max(max_x, e.x);
    max_y = std::max(max_y, e.y);
    max_color = std::max(max_color, e.color_level);
  }
  const int cell = 40, margin = 40, legend = 24 * (max_color + 2);
  const int width = margin * 2 + cell * (max_x + 1), height = margin * 2 + cell * (max_y + 1) + legend;
  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
    << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << margin << "\" y=\"20\" font-family=\"monospace\" font-size=\"14\">p=" << page.p << " "
    << to_string(page.ring) << " " << to_string(page.page) << "</text>\n";
  auto cx = [&](int x) { return margin + cell * x + cell / 2; };
  auto cy = [&](int y) { return margin + cell * (max_y - y) + cell / 2; };
  for (int x = 0; x <= max_x; ++x)
    s << "<text x=\"" << cx(x) << "\" y=\"" << margin + cell * (max_y + 1) + 14
      << "\" font-family=\"monospace\" font-size=\"10\" text-anchor=\"middle\">" << x << "</text>\n";
  for (int y = 0; y <= max_y; ++y)
    s << "<text x=\"" << margin - 8 << "\" y=\"" << cy(y) + 4
      << "\" font-family=\"monospace\" font-size=\"10\" text-anchor=\"end\">" << y << "</text>\n";
  for (const auto& e : page.entries) {
    s << "<g>";
    s << "<rect x=\"" << cx(e.x) - cell / 2 + 3 << "\" y=\"" << cy(e.y) - cell / 2 + 3 << "\" width=\"" << cell - 6
      << "\" height=\"" << cell - 6 << "\" fill=\"none\" stroke=\"" << color_of(e.color_level)
      << "\" stroke-width=\"2\"/>";
    s << "<text x=\"" << cx(e.x) << "\" y=\"" << cy(e.y) + 4 << "\" font-family=\"monospace\" font-size=\"9\" fill=\""
      << color_of(e.color_level) << "\" text-anchor=\"middle\">" << escape(e.hieroglyph) << "</text>";
    s << "<title>" << escape(e.mackey.to_string()) << "</title></g>\n";
  }
  int ly = margin + cell * (max_y + 1) + 30;
  for (int c = 0; c <= max_color; ++c, ly += 24) {
    s << "<rect x=\"" << margin << "\" y=\"" << ly << "\" width=\"14\" height=\"14\" fill=\"" << color_of(c)
      << "\"/>";
    s << "<text x=\"" << margin + 20 << "\" y=\"" << ly + 12 << "\" font-family=\"monospace\" font-size=\"12\">"
      << (c == 0 ? std::string("W") : "Φ^{C_{p^" + std::to_string(c - 1) + "}}W") << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::string chart_text(const ChartPage& page) {
  std::ostringstream s;
  s << "p=" << page.p << " ring=" << to_string(page.ring) << " page=" << to_string(page.page) << "\n";
  for (const auto& e : page.entries) {
    s << "(" << e.x << "," << e.y << ") " << e.hieroglyph << " color=" << e.color_level << " "
      << e.mackey.to_string();
    if (e.fh) s << " (f h)=(" << e.fh->first << " " << e.fh->second << ")";
    s << "\n";
  }
  return s.str();
}

LegendreFigure legendre_figure(u64 p, u64 n_max) {
  require_prime(p);
  if (n_max < 1) throw DomainError("n_max must be at least 1");
  LegendreFigure fig{p, n_max, {}};
  for (u64 n = 1; n <= n_max; ++n) {
    std::vector<std::pair<unsigned, u64>> col;
    for (const auto& [r, e] : AtomProduct::factorial(p, n).exp_xi) col.emplace_back(r, u64(e));
    fig.columns.push_back(col);
  }
  return fig;
}

u64 column_height(const std::vector<std::pair<unsigned, u64>>& column) {
  u64 h = 0;
  for (const auto& [r, c] : column) h += c;
  return h;
}

Json legendre_json(const LegendreFigure& fig) {
  Json j;
  j["schema_version"] = kChartSchemaVersion;
  j["p"] = fig.p;
  j["n_max"] = fig.n_max;
  Json cols = Json::array();
  for (std::size_t k = 0; k < fig.columns.size(); ++k) {
    Json bars = Json::array();
    for (const auto& [r, c] : fig.columns[k]) bars.push_back({{"level", r}, {"count", c}});
    cols.push_back({{"n", k + 1}, {"height", column_height(fig.columns[k])}, {"bars", bars}});
  }
  j["columns"] = cols;
  return j;
}

std::string legendre_svg(const LegendreFigure& fig) {
  u64 max_h = 1;
  for (const auto& c : fig.columns) max_h = std::max(max_h, column_height(c));
  const int bw = 16, unit = 12, margin = 30;
  const int width = margin * 2 + bw * int(fig.columns.size()), height = margin * 2 + unit * int(max_h);
  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
    << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t k = 0; k < fig.columns.size(); ++k) {
    int y = margin + unit * int(max_h);
    for (const auto& [r, c] : fig.columns[k]) {
      int h = unit * int(c);
      y -= h;
      s << "<rect x=\"" << margin + bw * int(k) + 1 << "\" y=\"" << y << "\" width=\"" << bw - 2 << "\" height=\"" << h
        << "\" fill=\"" << color_of(int(r)) << "\"/>\n";
    }
    s << "<text x=\"" << margin + bw * int(k) + bw / 2 << "\" y=\"" << height - margin / 2
      << "\" font-family=\"monospace\" font-size=\"9\" text-anchor=\"middle\">" << k + 1 << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::string legendre_text(const LegendreFigure& fig) {
  std::ostringstream s;
  s << "p=" << fig.p << " q-Legendre bars (glyph = atom level)\n";
  for (std::size_t k = 0; k < fig.columns.size(); ++k) {
    s << (k + 1 < 10 ? " " : "") << k + 1 << " |";
    for (const auto& [r, c] : fig.columns[k])
      for (u64 t = 0; t < c; ++t) s << kLevelGlyphs[std::min<std::size_t>(r, kLevelGlyphs.size() - 1)];
    s << " " << column_height(fig.columns[k]) << "\n";
  }
  return s.str();
}

}  // namespace prismslice
