#include "render.hpp"

#include <array>
#include <sstream>

#include "packclass/errors.hpp"
#include "packclass/rational.hpp"

namespace packclass::cli {

namespace {

constexpr std::int64_t kUnitsPerLength = 1000;

// Fixed three-decimal rendering of r * 1000, rounded half away from zero.
std::string units(const Rational& r) {
  const Rational scaled = r * kUnitsPerLength * 1000;
  using boost::multiprecision::cpp_int;
  cpp_int num = numerator(scaled), den = denominator(scaled);
  const bool negative = num < 0;
  if (negative) num = -num;
  cpp_int milli = (2 * num + den) / (2 * den);
  std::string whole = cpp_int(milli / 1000).str();
  std::string frac = cpp_int(milli % 1000).str();
  frac.insert(0, 3 - frac.size(), '0');
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  std::string out = (negative && milli != 0 ? "-" : "") + whole;
  if (!frac.empty()) out += "." + frac;
  return out;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr std::array<const char*, 8> kFill = {"#8dd3c7", "#ffffb3", "#bebada", "#fb8072",
                                              "#80b1d3", "#fdb462", "#b3de69", "#fccde5"};

}  // namespace

std::string render_svg(const Instance& inst, const Packing& packing) {
  if (inst.dimensions() != 2) {
    throw Error(ErrorKind::kDimensionMismatch, "render needs a 2-dimensional instance, got d=" +
                                                   std::to_string(inst.dimensions()));
  }
  const Rational& w1 = inst.container()[0];
  const Rational& w2 = inst.container()[1];
  const Rational smaller = std::min(w1, w2);
  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << units(w1) << " "
    << units(w2) << "\">\n"
    << "  <rect x=\"0\" y=\"0\" width=\"" << units(w1) << "\" height=\"" << units(w2)
    << "\" fill=\"white\" stroke=\"black\" stroke-width=\"" << units(smaller / 100) << "\"/>\n";
  // Instance order keeps colours and layering stable.
  for (std::size_t b = 0; b < inst.box_count(); ++b) {
    const Box& box = inst.box(b);
    auto it = packing.positions.find(box.id);
    if (it == packing.positions.end()) continue;
    const auto& pos = it->second;
    const Rational x = pos[0];
    const Rational y = w2 - pos[1] - box.size[1];
    const Rational label = std::min(box.size[0], box.size[1]) / 3;
    s << "  <g>\n"
      << "    <rect x=\"" << units(x) << "\" y=\"" << units(y) << "\" width=\""
      << units(box.size[0]) << "\" height=\"" << units(box.size[1]) << "\" fill=\""
      << kFill[b % kFill.size()] << "\" stroke=\"black\" stroke-width=\""
      << units(smaller / 200) << "\"/>\n"
      << "    <text x=\"" << units(x + box.size[0] / 2) << "\" y=\""
      << units(y + box.size[1] / 2) << "\" font-size=\"" << units(label)
      << "\" text-anchor=\"middle\" dominant-baseline=\"central\">" << escape_xml(box.id)
      << "</text>\n"
      << "  </g>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace packclass::cli
