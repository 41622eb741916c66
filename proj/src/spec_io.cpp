#include "nilsect/spec_io.hpp"

#include "nilsect/presets.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace nilsect {

namespace {

using json = nlohmann::ordered_json;

class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

  [[noreturn]] void fail(const std::string& message) const { throw SpecParseError(path_.empty() ? "<root>" : path_, message); }

  Reader field(const std::string& key) const {
    if (!j_.is_object()) fail("expected an object");
    auto it = j_.find(key);
    if (it == j_.end()) Reader(j_, child_path(key)).fail("missing field");
    return Reader(*it, child_path(key));
  }

  void allow_only(std::initializer_list<const char*> keys) const {
    if (!j_.is_object()) fail("expected an object");
    for (const auto& item : j_.items()) {
      bool known = false;
      for (const char* k : keys) known = known || item.key() == k;
      if (!known) Reader(item.value(), child_path(item.key())).fail("unknown field");
    }
  }

  bool has(const std::string& key) const { return j_.is_object() && j_.contains(key); }

  Reader at(std::size_t i) const { return Reader(j_.at(i), path_ + "[" + std::to_string(i) + "]"); }

  std::size_t size() const {
    if (!j_.is_array()) fail("expected an array");
    return j_.size();
  }

  std::string string() const {
    if (!j_.is_string()) fail("expected a string");
    return j_.get<std::string>();
  }

  Integer integer() const {
    if (j_.is_number_integer()) {
      if (j_.is_number_unsigned()) return Integer(j_.get<std::uint64_t>());
      return Integer(j_.get<std::int64_t>());
    }
    if (j_.is_string()) {
      const std::string s = j_.get<std::string>();
      std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
      if (start == s.size() || s.find_first_not_of("0123456789", start) != std::string::npos)
        fail("expected an integer, got \"" + s + "\"");
      return Integer(s[0] == '+' ? s.substr(1) : s);
    }
    fail("expected an integer");
  }

  Index index() const {
    const Integer v = integer();
    if (v < 0 || v > std::numeric_limits<int>::max()) fail("expected a nonnegative index");
    return static_cast<Index>(v.convert_to<long long>());
  }

  IntVector vector(Index expected = -1) const {
    const std::size_t n = size();
    if (expected >= 0 && static_cast<Index>(n) != expected)
      fail("expected " + std::to_string(expected) + " entries, got " + std::to_string(n));
    IntVector v(static_cast<Index>(n));
    for (std::size_t i = 0; i < n; ++i) v(static_cast<Index>(i)) = at(i).integer();
    return v;
  }

  IntMatrix matrix(Index rows, Index cols) const {
    if (size() != static_cast<std::size_t>(rows)) fail("expected " + std::to_string(rows) + " rows");
    IntMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) m.row(i) = at(static_cast<std::size_t>(i)).vector(cols).transpose();
    return m;
  }

  Nil2Element element(Index n) const {
    allow_only({"v", "z"});
    Nil2Element e{field("v").vector(n), IntVector::Zero(pair_count(n))};
    if (has("z")) e.z = field("z").vector(pair_count(n));
    return e;
  }

  const json& raw() const { return j_; }
  const std::string& path() const { return path_; }

 private:
  std::string child_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const json& j_;
  std::string path_;
};

PieceKind parse_kind(const Reader& r) {
  const std::string s = r.string();
  if (s == "proper") return PieceKind::proper;
  if (s == "punctured") return PieceKind::punctured;
  r.fail("kind must be \"proper\" or \"punctured\"");
}

PunctureType parse_puncture(const Reader& r) {
  const std::string s = r.string();
  if (s == "real") return PunctureType::real;
  if (s == "pair") return PunctureType::conjugate_pair;
  r.fail("puncture must be \"real\" or \"pair\"");
}

SmoothPiece parse_piece(const Reader& r) {
  if (r.has("preset")) {
    r.allow_only({"preset", "handles", "name"});
    const std::string name = r.field("preset").string();
    const std::string handles = r.has("handles") ? r.field("handles").string() : std::string{};
    std::optional<SmoothPiece> p;
    try {
      p = presets::by_name(name, handles);
    } catch (const std::invalid_argument& e) {
      r.field("handles").fail(e.what());
    }
    if (!p) r.field("preset").fail("unknown preset \"" + name + "\"");
    if (r.has("name")) p->name = r.field("name").string();
    return *p;
  }

  r.allow_only({"name", "kind", "genus", "punctures", "ovals", "tau", "tau_images", "components", "base_component"});
  SmoothPiece p;
  p.name = r.has("name") ? r.field("name").string() : std::string{};
  p.kind = parse_kind(r.field("kind"));
  p.genus = r.field("genus").index();
  if (r.has("punctures")) {
    const Reader pr = r.field("punctures");
    for (std::size_t i = 0; i < pr.size(); ++i) p.punctures.push_back(parse_puncture(pr.at(i)));
  }
  p.ovals = r.field("ovals").index();
  const Index n = p.expected_rank();
  if (n < 0) r.field("punctures").fail("a punctured piece needs at least one puncture");
  p.tau = r.field("tau").matrix(n, n);
  const Reader images = r.field("tau_images");
  if (images.size() != static_cast<std::size_t>(n)) images.fail("expected " + std::to_string(n) + " generator images");
  for (Index i = 0; i < n; ++i) p.tau_images.push_back(images.at(static_cast<std::size_t>(i)).element(n));
  const Reader comps = r.field("components");
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const Reader c = comps.at(i);
    c.allow_only({"label", "lift"});
    p.components.push_back(RealComponent{c.field("label").string(), c.field("lift").element(n)});
  }
  p.base_component = r.has("base_component") ? r.field("base_component").index() : 0;
  return p;
}

GluePoint parse_point(const Reader& r) {
  r.allow_only({"piece", "orbit", "component"});
  GluePoint pt;
  pt.piece = r.field("piece").index();
  const std::string orbit = r.field("orbit").string();
  if (orbit == "fixed")
    pt.orbit = Orbit::fixed;
  else if (orbit == "swapped")
    pt.orbit = Orbit::swapped;
  else
    r.field("orbit").fail("orbit must be \"fixed\" or \"swapped\"");
  if (pt.orbit == Orbit::fixed) pt.component = r.field("component").index();
  return pt;
}

NodeGluing parse_gluing(const Reader& r) {
  r.allow_only({"relation", "points"});
  NodeGluing g;
  const std::string rel = r.field("relation").string();
  if (rel == "identify")
    g.relation = GlueRelation::identify;
  else if (rel == "conjugate_self")
    g.relation = GlueRelation::conjugate_self;
  else
    r.field("relation").fail("relation must be \"identify\" or \"conjugate_self\"");
  const Reader pts = r.field("points");
  for (std::size_t i = 0; i < pts.size(); ++i) g.points.push_back(parse_point(pts.at(i)));
  return g;
}

json kind_json(PieceKind k) { return k == PieceKind::proper ? "proper" : "punctured"; }

json element_json(const Nil2Element& e) { return json{{"v", vector_json(e.v)}, {"z", vector_json(e.z)}}; }

}  // namespace

json integer_json(const Integer& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return json(x.convert_to<std::int64_t>());
  return json(x.str());
}

json vector_json(const IntVector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(integer_json(v(i)));
  return out;
}

CurveSpec parse_curve_spec(const json& j) {
  const Reader root(j, "");
  if (!j.is_object()) root.fail("a curve spec is a JSON object");
  root.allow_only({"name", "pieces", "gluings", "base"});
  CurveSpec spec;
  spec.name = root.has("name") ? root.field("name").string() : std::string{};
  const Reader pieces = root.field("pieces");
  for (std::size_t i = 0; i < pieces.size(); ++i) spec.pieces.push_back(parse_piece(pieces.at(i)));
  if (root.has("gluings")) {
    const Reader gl = root.field("gluings");
    for (std::size_t i = 0; i < gl.size(); ++i) spec.gluings.push_back(parse_gluing(gl.at(i)));
  }
  if (root.has("base")) {
    const Reader b = root.field("base");
    b.allow_only({"piece", "component"});
    spec.base.piece = b.field("piece").index();
    spec.base.component = b.field("component").index();
  } else if (!spec.pieces.empty()) {
    spec.base = ComponentRef{0, spec.pieces.front().base_component};
  }
  return spec;
}

namespace {

// nlohmann messages look like "[json.exception.parse_error.101] parse error at line 1, column 5: <detail>".
std::string syntax_message(const nlohmann::json::parse_error& e) {
  const std::string what = e.what();
  const auto colon = what.rfind(": ");
  return "invalid JSON: " + (colon == std::string::npos ? what : what.substr(colon + 2));
}

}  // namespace

CurveSpec parse_curve_spec(const std::string& text, const std::string& source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw SpecParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col), syntax_message(e));
  }
  try {
    return parse_curve_spec(j);
  } catch (const SpecParseError& e) {
    throw SpecParseError(source + ": " + e.where(), std::string(e.what()).substr(e.where().size() + 2));
  }
}

CurveSpec load_curve_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecParseError(path, "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_curve_spec(buf.str(), path);
}

json to_json(const CurveSpec& spec) {
  json out;
  out["name"] = spec.name;
  json pieces = json::array();
  for (const auto& p : spec.pieces) {
    json pj;
    pj["name"] = p.name;
    pj["kind"] = kind_json(p.kind);
    pj["genus"] = p.genus;
    json punct = json::array();
    for (auto t : p.punctures) punct.push_back(t == PunctureType::real ? "real" : "pair");
    pj["punctures"] = punct;
    pj["ovals"] = p.ovals;
    json tau = json::array();
    for (Index i = 0; i < p.tau.rows(); ++i) tau.push_back(vector_json(IntVector(p.tau.row(i).transpose())));
    pj["tau"] = tau;
    json images = json::array();
    for (const auto& img : p.tau_images) images.push_back(element_json(img));
    pj["tau_images"] = images;
    json comps = json::array();
    for (const auto& c : p.components) comps.push_back(json{{"label", c.label}, {"lift", element_json(c.lift)}});
    pj["components"] = comps;
    pj["base_component"] = p.base_component;
    pieces.push_back(pj);
  }
  out["pieces"] = pieces;
  json gluings = json::array();
  for (const auto& g : spec.gluings) {
    json gj;
    gj["relation"] = g.relation == GlueRelation::identify ? "identify" : "conjugate_self";
    json pts = json::array();
    for (const auto& pt : g.points) {
      json q;
      q["piece"] = pt.piece;
      q["orbit"] = pt.orbit == Orbit::fixed ? "fixed" : "swapped";
      if (pt.orbit == Orbit::fixed) q["component"] = pt.component;
      pts.push_back(q);
    }
    gj["points"] = pts;
    gluings.push_back(gj);
  }
  out["gluings"] = gluings;
  out["base"] = json{{"piece", spec.base.piece}, {"component", spec.base.component}};
  return out;
}

std::string emit_curve_spec(const CurveSpec& spec) { return to_json(spec).dump(2) + "\n"; }

}  // namespace nilsect
