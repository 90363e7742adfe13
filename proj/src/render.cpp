#include <array>
#include <cstdint>
#include <sstream>

#include "sqpack/io.hpp"

namespace sqpack {

namespace {

constexpr std::int64_t kCanvas = 512;
constexpr std::int64_t kMargin = 16;

constexpr std::array<const char*, 6> kPalette = {"#4e79a7", "#f28e2b", "#59a14f",
                                                 "#e15759", "#76b7b2", "#edc948"};

std::string px(const Rational& unit_coord) {
  return (Rational(kMargin) + Rational(kCanvas) * unit_coord).decimal(3);
}

// Squares of equal side share a color.
const char* color_for(const Rational& side) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : side.str()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return kPalette[h % kPalette.size()];
}

}  // namespace

std::string render_svg(const Packing& p) {
  const std::int64_t size = kCanvas + 2 * kMargin;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
     << "\" viewBox=\"0 0 " << size << " " << size << "\">\n"
     << "  <title>n = " << p.size() << ", total = " << p.total() << "</title>\n"
     << "  <rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kCanvas
     << "\" height=\"" << kCanvas << "\" fill=\"white\" stroke=\"black\" stroke-width=\"2\"/>\n";
  const Rational one(1);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Square& sq = p.squares()[i];
    // SVG y points down.
    const Rational top_edge = one - sq.top();
    os << "  <rect x=\"" << px(sq.x()) << "\" y=\"" << px(top_edge) << "\" width=\""
       << (Rational(kCanvas) * sq.side()).decimal(3) << "\" height=\""
       << (Rational(kCanvas) * sq.side()).decimal(3) << "\" fill=\"" << color_for(sq.side())
       << "\" fill-opacity=\"0.6\" stroke=\"black\" stroke-width=\"0.5\">"
       << "<title>#" << i << " side " << sq.side() << " (" << sq.side().decimal(6)
       << ")</title></rect>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void write_svg(const Packing& p, const std::filesystem::path& path) {
  write_text_file(path, render_svg(p));
}

}  // namespace sqpack
