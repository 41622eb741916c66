#include "nilsect/presets.hpp"

namespace nilsect::presets {

namespace {

Nil2Element word(Index n, std::initializer_list<std::pair<Index, int>> letters) {
  Nil2Element e{IntVector::Zero(n), IntVector::Zero(pair_count(n))};
  for (auto [i, k] : letters) e.v(i) += k;
  return e;
}

SmoothPiece make(std::string name, PieceKind kind, Index genus, std::vector<PunctureType> punctures) {
  SmoothPiece p;
  p.name = std::move(name);
  p.kind = kind;
  p.genus = genus;
  p.punctures = std::move(punctures);
  return p;
}

void set_tau(SmoothPiece& p, std::vector<Nil2Element> images) {
  const Index n = static_cast<Index>(images.size());
  p.tau = IntMatrix(n, n);
  for (Index i = 0; i < n; ++i) p.tau.col(i) = images[static_cast<std::size_t>(i)].v;
  p.tau_images = std::move(images);
}

void add_component(SmoothPiece& p, std::string label, Nil2Element lift) {
  p.components.push_back(RealComponent{std::move(label), std::move(lift)});
  p.ovals = static_cast<Index>(p.components.size());
}

SmoothPiece surface_model(const std::string& handles, bool punctured) {
  const Index g = static_cast<Index>(handles.size());
  const Index n = 2 * g;
  SmoothPiece p = make((punctured ? "punctured_surface_" : "surface_") + handles,
                       punctured ? PieceKind::punctured : PieceKind::proper, g,
                       punctured ? std::vector<PunctureType>{PunctureType::real} : std::vector<PunctureType>{});
  std::vector<Nil2Element> images;
  for (Index h = 0; h < g; ++h) {
    const Index a = 2 * h, b = 2 * h + 1;
    switch (handles[static_cast<std::size_t>(h)]) {
      case 'd':
        images.push_back(word(n, {{a, 1}}));
        images.push_back(word(n, {{b, -1}}));
        break;
      case 's':
        images.push_back(word(n, {{b, 1}}));
        images.push_back(word(n, {{a, 1}}));
        break;
      default:
        throw std::invalid_argument("handle types are 'd' or 's', got '" + handles + "'");
    }
  }
  set_tau(p, std::move(images));
  add_component(p, "oval0", word(n, {}));
  for (Index h = 0; h < g; ++h)
    if (handles[static_cast<std::size_t>(h)] == 'd')
      add_component(p, "oval" + std::to_string(h + 1), word(n, {{2 * h + 1, 1}}));
  return p;
}

}  // namespace

SmoothPiece real_conic() {
  SmoothPiece p = make("real_conic", PieceKind::proper, 0, {});
  set_tau(p, {});
  add_component(p, "RP1", word(0, {}));
  return p;
}

SmoothPiece pointless_conic() {
  SmoothPiece p = make("pointless_conic", PieceKind::proper, 0, {});
  set_tau(p, {});
  return p;
}

SmoothPiece punctured_line_2() {
  SmoothPiece p = make("punctured_line_2", PieceKind::punctured, 0, {PunctureType::real, PunctureType::real});
  set_tau(p, {word(1, {{0, -1}})});
  add_component(p, "(0,inf)", word(1, {}));
  add_component(p, "(-inf,0)", word(1, {{0, 1}}));
  return p;
}

SmoothPiece punctured_line_3() {
  SmoothPiece p = make("punctured_line_3", PieceKind::punctured, 0,
                       {PunctureType::real, PunctureType::real, PunctureType::real});
  set_tau(p, {word(2, {{0, -1}}), word(2, {{1, -1}})});
  add_component(p, "(0,1)", word(2, {}));
  add_component(p, "(1,inf)", word(2, {{1, -1}}));
  add_component(p, "(-inf,0)", word(2, {{0, 1}}));
  return p;
}

SmoothPiece line_minus_pair() {
  SmoothPiece p = make("line_minus_pair", PieceKind::punctured, 0, {PunctureType::conjugate_pair});
  set_tau(p, {word(1, {{0, 1}})});
  add_component(p, "RP1", word(1, {}));
  return p;
}

SmoothPiece line_minus_real_and_pair() {
  SmoothPiece p = make("line_minus_real_and_pair", PieceKind::punctured, 0,
                       {PunctureType::real, PunctureType::conjugate_pair});
  set_tau(p, {word(2, {{1, -1}}), word(2, {{0, -1}})});
  add_component(p, "R", word(2, {}));
  return p;
}

SmoothPiece surface(const std::string& handles) { return surface_model(handles, false); }

SmoothPiece punctured_surface(const std::string& handles) { return surface_model(handles, true); }

std::vector<std::string> names() {
  return {"real_conic",       "pointless_conic", "punctured_line_2",         "punctured_line_3",
          "line_minus_pair",  "line_minus_real_and_pair", "surface", "punctured_surface"};
}

std::optional<SmoothPiece> by_name(const std::string& name, const std::string& handles) {
  if (name == "real_conic") return real_conic();
  if (name == "pointless_conic") return pointless_conic();
  if (name == "punctured_line_2") return punctured_line_2();
  if (name == "punctured_line_3") return punctured_line_3();
  if (name == "line_minus_pair") return line_minus_pair();
  if (name == "line_minus_real_and_pair") return line_minus_real_and_pair();
  if (name == "surface") return surface(handles);
  if (name == "punctured_surface") return punctured_surface(handles);
  return std::nullopt;
}

CurveSpec single(SmoothPiece piece, std::string name) {
  CurveSpec spec;
  spec.name = std::move(name);
  spec.base = ComponentRef{0, piece.base_component};
  spec.pieces.push_back(std::move(piece));
  return spec;
}

std::vector<std::pair<std::string, CurveSpec>> bundled_specs() {
  std::vector<std::pair<std::string, CurveSpec>> out;
  out.emplace_back("p1_minus_3_points", single(punctured_line_3(), "p1_minus_3_points"));
  out.emplace_back("elliptic_2_ovals", single(surface("d"), "elliptic_2_ovals"));

  {
    CurveSpec s;
    s.name = "wedge_p1_minus_3_points_elliptic";
    s.pieces = {punctured_line_3(), surface("d")};
    s.gluings.push_back(NodeGluing{GlueRelation::identify, {{0, Orbit::fixed, 0}, {1, Orbit::fixed, 0}}});
    out.emplace_back(s.name, s);
  }
  {
    CurveSpec s;
    s.name = "wedge_p1_minus_3_points_gm";
    s.pieces = {punctured_line_3(), punctured_line_2()};
    s.gluings.push_back(NodeGluing{GlueRelation::identify, {{0, Orbit::fixed, 1}, {1, Orbit::fixed, 0}}});
    out.emplace_back(s.name, s);
  }
  out.emplace_back("genus2_m_curve", single(surface("dd"), "genus2_m_curve"));
  {
    CurveSpec s;
    s.name = "conic_pair_node";
    s.pieces = {real_conic(), real_conic()};
    s.pieces[1].name = "real_conic_b";
    s.gluings.push_back(NodeGluing{GlueRelation::identify, {{0, Orbit::swapped, 0}, {1, Orbit::swapped, 0}}});
    out.emplace_back(s.name, s);
  }
  {
    CurveSpec s;
    s.name = "conic_self_conjugate_node";
    s.pieces = {real_conic()};
    s.gluings.push_back(NodeGluing{GlueRelation::conjugate_self, {{0, Orbit::swapped, 0}}});
    out.emplace_back(s.name, s);
  }
  {
    CurveSpec s;
    s.name = "elliptic_with_pointless_conic";
    s.pieces = {surface("d"), pointless_conic()};
    s.gluings.push_back(NodeGluing{GlueRelation::identify, {{0, Orbit::swapped, 0}, {1, Orbit::swapped, 0}}});
    out.emplace_back(s.name, s);
  }
  return out;
}

}  // namespace nilsect::presets
