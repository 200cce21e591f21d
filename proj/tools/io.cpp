#include "io.hpp"

#include <cstring>
#include <fstream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>

#include "packclass/errors.hpp"
#include "packclass/rational.hpp"

namespace packclass::cli {

namespace {

// Input iterator that publishes how far the parser has read.
class TrackingIterator {
 public:
  using iterator_category = std::input_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  TrackingIterator(const char* p, const char** latest) : p_(p), latest_(latest) {}
  reference operator*() const { return *p_; }
  TrackingIterator& operator++() {
    ++p_;
    *latest_ = p_;
    return *this;
  }
  TrackingIterator operator++(int) {
    TrackingIterator old = *this;
    ++*this;
    return old;
  }
  friend bool operator==(const TrackingIterator& a, const TrackingIterator& b) {
    return a.p_ == b.p_;
  }

 private:
  const char* p_;
  const char** latest_;
};

// Offset where the value that ends at `end` starts. The lexer reads at most one
// character past a number, so the scan first drops that lookahead.
std::size_t token_start(std::string_view t, std::size_t end) {
  std::size_t p = std::min(end, t.size());
  while (p > 0 && std::strchr(" \t\r\n,]}", t[p - 1]) != nullptr) --p;
  if (p == 0) return 0;
  const char last = t[p - 1];
  if (last == '{' || last == '[') return p - 1;
  if (last == '"') {
    std::size_t q = p - 1;
    while (q > 0) {
      --q;
      if (t[q] != '"') continue;
      std::size_t slashes = 0;
      while (q >= slashes + 1 && t[q - slashes - 1] == '\\') ++slashes;
      if (slashes % 2 == 0) return q;
    }
    return 0;
  }
  while (p > 0 && (std::isalnum(static_cast<unsigned char>(t[p - 1])) != 0 ||
                   std::strchr("+-.", t[p - 1]) != nullptr)) {
    --p;
  }
  return p;
}

std::string line_col(std::string_view t, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t k = 0; k < offset && k < t.size(); ++k) {
    if (t[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

std::string escape_pointer(const std::string& token) {
  std::string out;
  for (char c : token) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

// Builds the DOM while recording where every value starts, keyed by JSON
// pointer.
class LocatingHandler {
 public:
  LocatingHandler(Json& root, std::string_view text, const char** latest, std::string source)
      : dom_(root, false), text_(text), latest_(latest), source_(std::move(source)) {}

  const std::map<std::string, std::size_t>& positions() const { return positions_; }

  bool null() { return value(), dom_.null(); }
  bool boolean(bool v) { return value(), dom_.boolean(v); }
  bool number_integer(Json::number_integer_t v) { return value(), dom_.number_integer(v); }
  bool number_unsigned(Json::number_unsigned_t v) { return value(), dom_.number_unsigned(v); }
  bool number_float(Json::number_float_t v, const std::string& s) {
    return value(), dom_.number_float(v, s);
  }
  bool string(std::string& v) { return value(), dom_.string(v); }
  bool binary(Json::binary_t& v) { return value(), dom_.binary(v); }
  bool start_object(std::size_t n) {
    value();
    frames_.push_back({false, 0, {}, {}});
    return dom_.start_object(n);
  }
  bool key(std::string& k) {
    Frame& f = frames_.back();
    if (!f.keys.insert(k).second) {
      fail(offset(), "duplicate key \"" + k + "\"");
    }
    f.current = k;
    return dom_.key(k);
  }
  bool end_object() {
    frames_.pop_back();
    return dom_.end_object();
  }
  bool start_array(std::size_t n) {
    value();
    frames_.push_back({true, 0, {}, {}});
    return dom_.start_array(n);
  }
  bool end_array() {
    frames_.pop_back();
    return dom_.end_array();
  }
  bool parse_error(std::size_t byte, const std::string&, const nlohmann::json::exception& ex) {
    std::string what = ex.what();
    const auto col = what.find("column ");
    const auto colon = what.find(": ", col == std::string::npos ? 0 : col);
    if (colon != std::string::npos) what = what.substr(colon + 2);
    fail(byte == 0 ? 0 : byte - 1, what);
    return false;
  }

 private:
  struct Frame {
    bool array;
    std::size_t next_index;
    std::string current;
    std::set<std::string> keys;
  };

  std::size_t offset() const { return static_cast<std::size_t>(*latest_ - text_.data()); }

  void value() {
    std::string pointer;
    for (auto& f : frames_) {
      if (f.array && &f == &frames_.back()) f.current = std::to_string(f.next_index++);
      pointer += "/" + escape_pointer(f.current);
    }
    positions_[pointer] = token_start(text_, offset());
  }

  [[noreturn]] void fail(std::size_t at, const std::string& message) const {
    throw Error(ErrorKind::kParse, source_ + ":" + line_col(text_, at) + ": " + message);
  }

  nlohmann::detail::json_sax_dom_parser<Json> dom_;
  std::string_view text_;
  const char** latest_;
  std::string source_;
  std::vector<Frame> frames_;
  std::map<std::string, std::size_t> positions_;
};

// A parsed document plus the means to report errors at a value's position.
class Document {
 public:
  Document(std::string_view text, std::string source) : text_(text), source_(std::move(source)) {
    const char* latest = text.data();
    LocatingHandler handler(root_, text, &latest, source_);
    TrackingIterator first(text.data(), &latest), last(text.data() + text.size(), &latest);
    Json::sax_parse(first, last, &handler);
    positions_ = handler.positions();
  }

  const Json& root() const { return root_; }

  [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
    std::size_t at = 0;
    if (auto it = positions_.find(pointer); it != positions_.end()) at = it->second;
    throw Error(ErrorKind::kParse, source_ + ":" + line_col(text_, at) + ": " +
                                       (pointer.empty() ? "document" : pointer) + ": " +
                                       message);
  }

  const Json& member(const Json& obj, const std::string& at, const std::string& key) const {
    if (!obj.is_object()) fail(at, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(at, "missing \"" + key + "\"");
    return *it;
  }

  void only_keys(const Json& obj, const std::string& at,
                 std::initializer_list<const char*> allowed) const {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      bool ok = false;
      for (const char* k : allowed) ok = ok || it.key() == k;
      if (!ok) fail(at + "/" + escape_pointer(it.key()), "unknown key \"" + it.key() + "\"");
    }
  }

  Rational rational(const Json& v, const std::string& at) const {
    if (v.is_number_integer()) {
      if (v.is_number_unsigned() &&
          v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
        fail(at, "integer out of range");
      }
      return Rational(v.get<std::int64_t>());
    }
    if (v.is_number_float()) fail(at, "floats are not allowed; write an integer or \"num/den\"");
    if (!v.is_string()) fail(at, "expected an integer or a \"num/den\" string");
    try {
      return parse_rational(v.get<std::string>());
    } catch (const Error& e) {
      fail(at, e.what());
    }
  }

  std::vector<Rational> rationals(const Json& v, const std::string& at) const {
    if (!v.is_array()) fail(at, "expected an array");
    std::vector<Rational> out;
    for (std::size_t k = 0; k < v.size(); ++k) {
      out.push_back(rational(v[k], at + "/" + std::to_string(k)));
    }
    return out;
  }

  std::string id(const Json& v, const std::string& at) const {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return v.dump();
    fail(at, "expected a box id string");
  }

 private:
  std::string_view text_;
  std::string source_;
  Json root_;
  std::map<std::string, std::size_t> positions_;
};

}  // namespace

Json parse_json(std::string_view text, const std::string& source) {
  return Document(text, source).root();
}

InstanceData parse_instance(std::string_view text, const std::string& source) {
  const Document doc(text, source);
  const Json& root = doc.root();
  if (!root.is_object()) doc.fail("", "expected an instance object");
  doc.only_keys(root, "", {"format", "name", "d", "container", "boxes"});
  if (root.contains("format") && root["format"] != 1) doc.fail("/format", "unsupported format");
  InstanceData data;
  const Json& d = doc.member(root, "", "d");
  if (!d.is_number_integer() || d.get<std::int64_t>() < 1) {
    doc.fail("/d", "d must be a positive integer");
  }
  data.d = d.get<std::size_t>();
  if (root.contains("container")) {
    data.container = doc.rationals(root["container"], "/container");
    if (data.container->size() != data.d) {
      doc.fail("/container", "expected " + std::to_string(data.d) + " sizes");
    }
  }
  const Json& boxes = doc.member(root, "", "boxes");
  if (!boxes.is_array()) doc.fail("/boxes", "expected an array");
  std::set<std::string> seen;
  for (std::size_t k = 0; k < boxes.size(); ++k) {
    const std::string at = "/boxes/" + std::to_string(k);
    const Json& b = boxes[k];
    if (!b.is_object()) doc.fail(at, "expected a box object");
    doc.only_keys(b, at, {"id", "size", "value"});
    Box box;
    box.id = doc.id(doc.member(b, at, "id"), at + "/id");
    if (box.id.empty()) doc.fail(at + "/id", "box ids must be non-empty");
    if (!seen.insert(box.id).second) doc.fail(at + "/id", "duplicate box id \"" + box.id + "\"");
    box.size = doc.rationals(doc.member(b, at, "size"), at + "/size");
    if (box.size.size() != data.d) {
      doc.fail(at + "/size", "expected " + std::to_string(data.d) + " sizes");
    }
    for (std::size_t i = 0; i < box.size.size(); ++i) {
      if (box.size[i] <= 0) doc.fail(at + "/size/" + std::to_string(i), "sizes must be positive");
    }
    if (b.contains("value")) {
      box.value = doc.rational(b["value"], at + "/value");
      if (*box.value < 0) doc.fail(at + "/value", "values must be non-negative");
    }
    data.boxes.push_back(std::move(box));
  }
  return data;
}

Packing parse_packing(std::string_view text, const std::string& source) {
  const Document doc(text, source);
  const Json& root = doc.root();
  const Json& positions = doc.member(root, "", "positions");
  if (!positions.is_object()) doc.fail("/positions", "expected an object of id -> coordinates");
  Packing p;
  for (auto it = positions.begin(); it != positions.end(); ++it) {
    p.positions.emplace(it.key(),
                        doc.rationals(it.value(), "/positions/" + escape_pointer(it.key())));
  }
  return p;
}

PackingClass parse_class(std::string_view text, const std::string& source,
                         const std::vector<std::string>& ids) {
  const Document doc(text, source);
  const Json& sets = doc.member(doc.root(), "", "class");
  if (!sets.is_array()) doc.fail("/class", "expected one array of edges per dimension");
  PackingClass cls;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const std::string at = "/class/" + std::to_string(i);
    if (!sets[i].is_array()) doc.fail(at, "expected an array of [id, id] pairs");
    Graph g(ids);
    for (std::size_t k = 0; k < sets[i].size(); ++k) {
      const std::string e = at + "/" + std::to_string(k);
      const Json& pair = sets[i][k];
      if (!pair.is_array() || pair.size() != 2) doc.fail(e, "expected an [id, id] pair");
      std::size_t ends[2];
      for (std::size_t s = 0; s < 2; ++s) {
        const std::string id = doc.id(pair[s], e + "/" + std::to_string(s));
        try {
          ends[s] = g.index_of(id);
        } catch (const Error&) {
          doc.fail(e + "/" + std::to_string(s), "no box \"" + id + "\" in the instance");
        }
      }
      if (ends[0] == ends[1]) doc.fail(e, "an edge needs two different boxes");
      g.add_edge(ends[0], ends[1]);
    }
    cls.edge_sets.push_back(std::move(g));
  }
  return cls;
}

LoadedInstance make_instance(const InstanceData& data, std::vector<Rational> container,
                             bool drop_oversized) {
  std::vector<std::string> warnings;
  std::vector<Box> kept;
  for (const auto& b : data.boxes) {
    bool fits = true;
    for (std::size_t i = 0; i < container.size() && i < b.size.size(); ++i) {
      fits = fits && b.size[i] <= container[i];
    }
    if (!fits && drop_oversized) {
      warnings.push_back("dropping box '" + b.id + "': it does not fit the container");
      continue;
    }
    kept.push_back(b);
  }
  return {Instance(std::move(kept), std::move(container)), std::move(warnings)};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kParse, path + ": cannot open file");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kParse, path + ": cannot write file");
  out << text;
}

Json rational_json(const Rational& r) {
  if (denominator(r) == 1 && r <= INT64_MAX && r >= INT64_MIN) {
    return numerator64(r);
  }
  return format_rational(r);
}

Json instance_json(const InstanceData& data) {
  Json out = Json::object();
  out["d"] = data.d;
  if (data.container) {
    Json c = Json::array();
    for (const auto& w : *data.container) c.push_back(rational_json(w));
    out["container"] = std::move(c);
  }
  Json boxes = Json::array();
  for (const auto& b : data.boxes) {
    Json box = Json::object();
    box["id"] = b.id;
    Json size = Json::array();
    for (const auto& w : b.size) size.push_back(rational_json(w));
    box["size"] = std::move(size);
    if (b.value) box["value"] = rational_json(*b.value);
    boxes.push_back(std::move(box));
  }
  out["boxes"] = std::move(boxes);
  return out;
}

Json packing_json(const Packing& p) {
  Json out = Json::object();
  for (const auto& [id, pos] : p.positions) {
    Json coords = Json::array();
    for (const auto& x : pos) coords.push_back(rational_json(x));
    out[id] = std::move(coords);
  }
  return out;
}

Json class_json(const PackingClass& cls) {
  Json out = Json::array();
  for (const auto& g : cls.edge_sets) {
    Json edges = Json::array();
    for (auto [u, v] : g.edges()) edges.push_back(Json::array({g.id(u), g.id(v)}));
    out.push_back(std::move(edges));
  }
  return out;
}

Json stats_json(const SearchStats& stats) {
  Json out = Json::object();
  out["nodes"] = stats.nodes;
  out["decisions"] = stats.decisions;
  out["forced"] = stats.forced;
  Json prunes = Json::object();
  for (std::size_t k = 0; k < kPruneRuleCount; ++k) {
    prunes[to_string(static_cast<PruneRule>(k))] = stats.prunes[k];
  }
  out["prunes"] = std::move(prunes);
  out["heuristic_hit"] = stats.heuristic_hit;
  out["quick_infeasible_hit"] = stats.quick_infeasible_hit;
  out["seconds"] = stats.seconds;
  return out;
}

}  // namespace packclass::cli
