#include "crown/svg.hpp"

#include <sstream>

namespace crown {
namespace {

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

const char* kPalette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                          "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};

}  // namespace

std::string svg_number(const Rational& value) {
  constexpr long kScale = 1000000;  // 1/64 == 15625 / 10^6
  Integer micro = floor(round_to_grid(value, 64) * kScale);
  bool negative = micro < 0;
  if (negative) micro = -micro;
  Integer whole = micro / kScale;
  Integer frac = micro % kScale;
  std::string out = (negative ? "-" : "") + whole.get_str();
  if (frac != 0) {
    std::string digits = frac.get_str();
    digits.insert(0, 6 - digits.size(), '0');
    while (digits.back() == '0') digits.pop_back();
    out += "." + digits;
  }
  return out;
}

std::string render_svg(const Layout& layout) {
  std::ostringstream out;
  auto bb = layout.bounding_box();
  Rational x0 = 0, y0 = 0, x1 = 1, y1 = 1;
  if (bb) {
    Rational mx = bb->width() / 20, my = bb->height() / 20;
    x0 = bb->x0 - mx;
    x1 = bb->x1 + mx;
    y0 = bb->y0 - my;
    y1 = bb->y1 + my;
  }
  // Screen y = -layout y.
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << svg_number(x0) << ' ' << svg_number(-y1) << ' '
      << svg_number(x1 - x0) << ' ' << svg_number(y1 - y0) << "\">\n";
  std::size_t i = 0;
  for (const auto& [id, pb] : layout) {
    const char* fill = kPalette[i++ % (sizeof kPalette / sizeof kPalette[0])];
    out << "  <g id=\"" << escape(id) << "\">\n";
    out << "    <rect x=\"" << svg_number(pb.left()) << "\" y=\"" << svg_number(-pb.top()) << "\" width=\""
        << svg_number(pb.spec.width) << "\" height=\"" << svg_number(pb.spec.height) << "\" fill=\"" << fill
        << "\" fill-opacity=\"0.35\" stroke=\"#333\" stroke-width=\"" << svg_number(pb.spec.height / 64 + Rational(1, 64))
        << "\"/>\n";
    Rational cx = pb.left() + pb.spec.width / 2;
    Rational cy = -(pb.bottom() + pb.spec.height / 2);
    out << "    <text x=\"" << svg_number(cx) << "\" y=\"" << svg_number(cy) << "\" font-size=\""
        << svg_number(pb.spec.height * Rational(3, 4)) << "\" text-anchor=\"middle\" dominant-baseline=\"central\">"
        << escape(pb.spec.display()) << "</text>\n";
    out << "  </g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace crown
