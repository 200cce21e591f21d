#include "ngcut.hpp"

#include <algorithm>
#include <sstream>

#include "packclass/errors.hpp"

namespace packclass::cli {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::int64_t> fields;
};

class Lines {
 public:
  Lines(std::string_view text, std::string source) : source_(std::move(source)) {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t number = 0;
    while (std::getline(in, raw)) {
      ++number;
      std::istringstream fields(raw);
      Line line{number, {}};
      std::string token;
      while (fields >> token) {
        std::int64_t value = 0;
        std::size_t used = 0;
        try {
          value = std::stoll(token, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != token.size()) fail(number, "expected integers, found '" + token + "'");
        line.fields.push_back(value);
      }
      if (!line.fields.empty()) lines_.push_back(std::move(line));
    }
  }

  const Line& next(const std::string& expecting) {
    if (pos_ == lines_.size()) {
      fail(lines_.empty() ? 1 : lines_.back().number + 1, "unexpected end of file, expecting " +
                                                             expecting);
    }
    return lines_[pos_++];
  }

  bool done() const { return pos_ == lines_.size(); }

  [[noreturn]] void fail(std::size_t line, const std::string& message) const {
    throw Error(ErrorKind::kParse, source_ + ":" + std::to_string(line) + ": " + message);
  }

 private:
  std::string source_;
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

void require_positive(const Lines& lines, const Line& line, std::int64_t v, const char* what) {
  if (v <= 0) lines.fail(line.number, std::string(what) + " must be positive");
}

}  // namespace

std::vector<NgcutInstance> parse_ngcut(std::string_view text, const std::string& source) {
  Lines lines(text, source);
  const Line& head = lines.next("the instance count");
  if (head.fields.size() != 1 || head.fields[0] < 0) {
    lines.fail(head.number, "expected a single non-negative instance count");
  }
  std::vector<NgcutInstance> out;
  for (std::int64_t k = 0; k < head.fields[0]; ++k) {
    NgcutInstance inst;
    const Line& count = lines.next("a piece count");
    if (count.fields.size() != 1 || count.fields[0] < 0) {
      lines.fail(count.number, "expected a single piece count");
    }
    inst.first_line = count.number;
    const Line& room = lines.next("the container line");
    if (room.fields.size() != 2) lines.fail(room.number, "expected container \"W1 W2\"");
    require_positive(lines, room, room.fields[0], "container length");
    require_positive(lines, room, room.fields[1], "container width");
    inst.data.d = 2;
    inst.data.container = std::vector<Rational>{Rational(room.fields[0]), Rational(room.fields[1])};
    for (std::int64_t p = 1; p <= count.fields[0]; ++p) {
      const Line& piece = lines.next("piece " + std::to_string(p));
      std::int64_t copies = 1, value = 0;
      if (piece.fields.size() == 3) {
        value = piece.fields[2];
        inst.rules.push_back(PieceRule::kThreeFields);
      } else if (piece.fields.size() == 4) {
        copies = piece.fields[2];
        value = piece.fields[3];
        inst.rules.push_back(PieceRule::kFourFields);
      } else {
        lines.fail(piece.number, "expected 3 or 4 integers on a piece line, found " +
                                     std::to_string(piece.fields.size()));
      }
      require_positive(lines, piece, piece.fields[0], "piece length");
      require_positive(lines, piece, piece.fields[1], "piece width");
      if (copies < 0) lines.fail(piece.number, "copies must be non-negative");
      if (value < 0) lines.fail(piece.number, "value must be non-negative");
      for (std::int64_t c = 1; c <= copies; ++c) {
        std::string id = "p" + std::to_string(p);
        if (copies > 1) id += "_" + std::to_string(c);
        inst.data.boxes.push_back(Box{id, {Rational(piece.fields[0]), Rational(piece.fields[1])},
                                      Rational(value)});
      }
    }
    out.push_back(std::move(inst));
  }
  if (!lines.done()) {
    const Line& extra = lines.next("");
    lines.fail(extra.number, "unexpected data after the last instance");
  }
  return out;
}

std::string describe_rules(const std::vector<PieceRule>& rules) {
  const bool three = std::count(rules.begin(), rules.end(), PieceRule::kThreeFields) > 0;
  const bool four = std::count(rules.begin(), rules.end(), PieceRule::kFourFields) > 0;
  if (three && four) {
    return "mixed 3-field (length width value) and 4-field (length width copies value) pieces";
  }
  if (four) return "4-field pieces (length width copies value)";
  if (three) return "3-field pieces (length width value)";
  return "no pieces";
}

}  // namespace packclass::cli
