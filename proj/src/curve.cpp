#include "nilsect/curve.hpp"

#include "nilsect/f2.hpp"

#include <algorithm>
#include <optional>

namespace nilsect {

namespace {

std::string piece_label(const CurveSpec& spec, Index p) {
  const auto& name = spec.pieces[static_cast<std::size_t>(p)].name;
  return name.empty() ? "piece" + std::to_string(p) : name;
}

std::string member_label(const CurveSpec& spec, Index p, Index c) {
  const auto& piece = spec.pieces[static_cast<std::size_t>(p)];
  return piece_label(spec, p) + ":" + piece.components[static_cast<std::size_t>(c)].label;
}

// One step of the assembly, in the order generators are allocated.
struct Step {
  enum Kind { attach_base, real_wedge, conjugate_wedge, real_node, swapped_pairs, self_conjugate } kind;
  Index gluing = -1;
  Index piece = -1;       // piece attached by this step
  Index piece_comp = -1;  // its component on a real wedge
  GluePoint first, second;
};

struct Plan {
  std::vector<Step> steps;
};

void check_point(const CurveSpec& spec, const GluePoint& pt, const std::string& where) {
  if (pt.piece < 0 || pt.piece >= static_cast<Index>(spec.pieces.size()))
    throw SpecError(where + ": piece index " + std::to_string(pt.piece) + " out of range");
  const auto& piece = spec.pieces[static_cast<std::size_t>(pt.piece)];
  if (pt.orbit == Orbit::fixed && (pt.component < 0 || pt.component >= static_cast<Index>(piece.components.size())))
    throw SpecError(where + ": piece '" + piece.name + "' has no real component " + std::to_string(pt.component));
}

Plan make_plan(const CurveSpec& spec) {
  if (spec.pieces.empty()) throw SpecError("spec has no pieces");
  const Index pieces = static_cast<Index>(spec.pieces.size());
  if (spec.base.piece < 0 || spec.base.piece >= pieces) throw SpecError("base: piece index out of range");
  const auto& base_piece = spec.pieces[static_cast<std::size_t>(spec.base.piece)];
  if (spec.base.component < 0 || spec.base.component >= static_cast<Index>(base_piece.components.size()))
    throw SpecError("base: piece '" + base_piece.name + "' has no real component " +
                    std::to_string(spec.base.component));

  for (std::size_t g = 0; g < spec.gluings.size(); ++g) {
    const auto& gl = spec.gluings[g];
    const std::string where = "gluings[" + std::to_string(g) + "]";
    if (gl.relation == GlueRelation::identify) {
      if (gl.points.size() != 2) throw SpecError(where + ": identify needs exactly two points");
      check_point(spec, gl.points[0], where + ".points[0]");
      check_point(spec, gl.points[1], where + ".points[1]");
      if (gl.points[0].orbit != gl.points[1].orbit)
        throw SpecError(where + ": a real point cannot be identified with a non-real point (gluing is not equivariant)");
    } else {
      if (gl.points.size() != 1) throw SpecError(where + ": conjugate_self needs exactly one point");
      check_point(spec, gl.points[0], where + ".points[0]");
      if (gl.points[0].orbit != Orbit::swapped)
        throw SpecError(where + ": conjugate_self needs a non-real point (gluing is not equivariant)");
    }
  }

  Plan plan;
  std::vector<bool> attached(static_cast<std::size_t>(pieces), false);
  attached[static_cast<std::size_t>(spec.base.piece)] = true;
  plan.steps.push_back(Step{Step::attach_base, -1, spec.base.piece, spec.base.component, {}, {}});

  std::vector<bool> done(spec.gluings.size(), false);
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t g = 0; g < spec.gluings.size(); ++g) {
      if (done[g]) continue;
      const auto& gl = spec.gluings[g];
      const Index gi = static_cast<Index>(g);
      if (gl.relation == GlueRelation::conjugate_self) {
        if (!attached[static_cast<std::size_t>(gl.points[0].piece)]) continue;
        plan.steps.push_back(Step{Step::self_conjugate, gi, -1, -1, gl.points[0], {}});
      } else {
        const auto& a = gl.points[0];
        const auto& b = gl.points[1];
        const bool ha = attached[static_cast<std::size_t>(a.piece)];
        const bool hb = attached[static_cast<std::size_t>(b.piece)];
        if (!ha && !hb) continue;
        const bool real = a.orbit == Orbit::fixed;
        if (ha && hb) {
          plan.steps.push_back(Step{real ? Step::real_node : Step::swapped_pairs, gi, -1, -1, a, b});
        } else {
          const GluePoint& host = ha ? a : b;
          const GluePoint& guest = ha ? b : a;
          plan.steps.push_back(Step{real ? Step::real_wedge : Step::conjugate_wedge, gi, guest.piece,
                                    real ? guest.component : -1, host, guest});
          attached[static_cast<std::size_t>(guest.piece)] = true;
        }
      }
      done[g] = true;
      progress = true;
    }
  }
  for (Index p = 0; p < pieces; ++p)
    if (!attached[static_cast<std::size_t>(p)])
      throw SpecError("spec is disconnected: piece '" + piece_label(spec, p) + "' is not glued to the base piece");
  return plan;
}

// Real components tracked with union-find; `members` are the piece-level labels.
class ComponentTable {
 public:
  Index add(std::string member) {
    parent_.push_back(static_cast<Index>(parent_.size()));
    members_.push_back({std::move(member)});
    return parent_.back();
  }

  Index find(Index c) const {
    while (parent_[static_cast<std::size_t>(c)] != c) c = parent_[static_cast<std::size_t>(c)];
    return c;
  }

  // Keeps the root of `keep`.
  void merge(Index keep, Index other) {
    keep = find(keep);
    other = find(other);
    if (keep == other) return;
    parent_[static_cast<std::size_t>(other)] = keep;
    auto& dst = members_[static_cast<std::size_t>(keep)];
    auto& src = members_[static_cast<std::size_t>(other)];
    dst.insert(dst.end(), src.begin(), src.end());
    src.clear();
  }

  std::vector<Index> roots() const {
    std::vector<Index> out;
    for (Index c = 0; c < static_cast<Index>(parent_.size()); ++c)
      if (find(c) == c) out.push_back(c);
    return out;
  }

  std::string label(Index root) const {
    auto m = members_[static_cast<std::size_t>(root)];
    std::sort(m.begin(), m.end());
    std::string out;
    for (const auto& s : m) out += (out.empty() ? "" : "=") + s;
    return out;
  }

 private:
  std::vector<Index> parent_;
  std::vector<std::vector<std::string>> members_;
};

// Runs the plan. With a free group attached it also builds the involution images
// of all generators and a lift for every real component.
class Assembler {
 public:
  Assembler(const CurveSpec& spec, const Plan& plan) : spec_(spec), plan_(plan) {}

  void enable_algebra() {
    offset_.assign(spec_.pieces.size(), -1);
    loop_.assign(plan_.steps.size(), -1);
    Index n = 0;
    for (std::size_t s = 0; s < plan_.steps.size(); ++s) {
      const Step& st = plan_.steps[s];
      if (st.piece >= 0) {
        offset_[static_cast<std::size_t>(st.piece)] = n;
        n += spec_.pieces[static_cast<std::size_t>(st.piece)].expected_rank();
      }
      if (st.kind == Step::swapped_pairs) {
        loop_[s] = n;
        n += 2;
      } else if (st.kind == Step::conjugate_wedge || st.kind == Step::real_node || st.kind == Step::self_conjugate) {
        loop_[s] = n++;
      }
    }
    free_.emplace(Nil2Group::free(n));
    images_.assign(static_cast<std::size_t>(n), std::nullopt);
  }

  void run() {
    of_piece_.resize(spec_.pieces.size());
    for (std::size_t s = 0; s < plan_.steps.size(); ++s) step(s);
  }

  Index rank() const { return free_ ? free_->rank() : 0; }
  Index offset(Index piece) const { return offset_[static_cast<std::size_t>(piece)]; }
  const ComponentTable& table() const { return table_; }

  Index component_of(const ComponentRef& ref) const {
    return table_.find(of_piece_[static_cast<std::size_t>(ref.piece)][static_cast<std::size_t>(ref.component)]);
  }

  const Nil2Element& lift(Index id) const { return lifts_[static_cast<std::size_t>(id)]; }

  std::vector<Nil2Element> images() const {
    std::vector<Nil2Element> out;
    for (const auto& img : images_) {
      if (!img) throw std::logic_error("assembly left a generator without an involution image");
      out.push_back(*img);
    }
    return out;
  }

  /// Embeds an element of a piece group (z in exterior-square coordinates).
  Nil2Element embed(Index p, const Nil2Element& e) const {
    const Index n = free_->rank();
    const Index off = offset(p);
    const Index np = e.v.size();
    Nil2Element out = free_->identity();
    out.v.segment(off, np) = e.v;
    for (Index i = 0; i < np; ++i)
      for (Index j = i + 1; j < np; ++j) out.z(wedge_index(off + i, off + j, n)) = e.z(wedge_index(i, j, np));
    return out;
  }

  IntVector embed_wedge(Index p, const IntVector& z) const {
    const Index np = spec_.pieces[static_cast<std::size_t>(p)].expected_rank();
    return embed(p, Nil2Element{IntVector::Zero(np), z}).z;
  }

 private:
  const SmoothPiece& piece(Index p) const { return spec_.pieces[static_cast<std::size_t>(p)]; }

  Nil2Element lift_at(const GluePoint& pt) const {
    return lifts_[static_cast<std::size_t>(component_of(ComponentRef{pt.piece, pt.component}))];
  }

  Nil2Element piece_lift(Index p, Index c) const {
    return embed(p, piece(p).components[static_cast<std::size_t>(c)].lift);
  }

  void set_lift(Index id, Nil2Element l) {
    if (!free_) return;
    if (static_cast<Index>(lifts_.size()) <= id) lifts_.resize(static_cast<std::size_t>(id + 1), free_->identity());
    lifts_[static_cast<std::size_t>(id)] = std::move(l);
  }

  // The piece's generators map to w tau_P(g) w^{-1} and its component lifts become l_d w^{-1}.
  // `merged` is the local component identified with `host`, if any.
  void add_piece(Index p, const std::optional<Nil2Element>& w, Index merged, Index host) {
    const auto& pc = piece(p);
    if (w) {
      const Index off = offset(p);
      for (Index g = 0; g < pc.expected_rank(); ++g)
        images_[static_cast<std::size_t>(off + g)] =
            free_->conjugate(*w, embed(p, pc.tau_images[static_cast<std::size_t>(g)]));
    }
    auto& ids = of_piece_[static_cast<std::size_t>(p)];
    for (Index c = 0; c < static_cast<Index>(pc.components.size()); ++c) {
      const Index id = table_.add(member_label(spec_, p, c));
      ids.push_back(id);
      if (w) set_lift(id, free_->compose(piece_lift(p, c), free_->inverse(*w)));
      if (c == merged) table_.merge(host, id);
    }
  }

  void step(std::size_t s) {
    const Step& st = plan_.steps[s];
    const bool algebra = free_.has_value();
    const Nil2Group* F = algebra ? &*free_ : nullptr;
    std::optional<Nil2Element> w;
    switch (st.kind) {
      case Step::attach_base:
        // rebased at the marked component: tau' = conj(l_c) o tau
        if (algebra) w = piece_lift(st.piece, st.piece_comp);
        add_piece(st.piece, w, -1, -1);
        break;
      case Step::real_wedge: {
        const Index host = component_of(ComponentRef{st.first.piece, st.first.component});
        if (algebra) w = F->compose(F->inverse(lift_at(st.first)), piece_lift(st.piece, st.piece_comp));
        add_piece(st.piece, w, st.piece_comp, host);
        break;
      }
      case Step::conjugate_wedge: {
        if (algebra) {
          const Index t = loop_[s];
          images_[static_cast<std::size_t>(t)] = F->inverse(F->generator(t));
          w = F->inverse(F->generator(t));
        }
        add_piece(st.piece, w, -1, -1);
        break;
      }
      case Step::real_node: {
        if (algebra) {
          const Index u = loop_[s];
          images_[static_cast<std::size_t>(u)] =
              F->compose(F->compose(F->inverse(lift_at(st.first)), F->generator(u)), lift_at(st.second));
        }
        Index keep = component_of(ComponentRef{st.first.piece, st.first.component});
        Index other = component_of(ComponentRef{st.second.piece, st.second.component});
        if (other == component_of(spec_.base)) std::swap(keep, other);
        table_.merge(keep, other);
        break;
      }
      case Step::swapped_pairs:
        if (algebra) {
          const Index u = loop_[s];
          images_[static_cast<std::size_t>(u)] = F->generator(u + 1);
          images_[static_cast<std::size_t>(u + 1)] = F->generator(u);
        }
        break;
      case Step::self_conjugate: {
        const Index id = table_.add("node" + std::to_string(st.gluing));
        if (algebra) {
          const Index v = loop_[s];
          images_[static_cast<std::size_t>(v)] = F->inverse(F->generator(v));
          set_lift(id, F->generator(v));
        }
        break;
      }
    }
  }

  const CurveSpec& spec_;
  const Plan& plan_;
  std::optional<Nil2Group> free_;
  std::vector<Index> offset_, loop_;
  std::vector<std::optional<Nil2Element>> images_;
  std::vector<Nil2Element> lifts_;
  ComponentTable table_;
  std::vector<std::vector<Index>> of_piece_;
};

PointedSet pointed_set(const CurveSpec& spec, const Assembler& as) {
  PointedSet out;
  const Index base = as.component_of(spec.base);
  for (Index root : as.table().roots()) {
    if (root == base) out.base = out.size();
    out.labels.push_back(as.table().label(root));
  }
  return out;
}

}  // namespace

Index SmoothPiece::expected_rank() const {
  if (kind == PieceKind::proper) return 2 * genus;
  Index points = 0;
  for (auto t : punctures) points += t == PunctureType::real ? 1 : 2;
  return 2 * genus + points - 1;
}

IntMatrix SmoothPiece::relations() const {
  const Index n = expected_rank();
  if (kind == PieceKind::proper && genus > 0) {
    IntMatrix rel(pair_count(n), 1);
    rel.col(0) = symplectic_class<Integer>(genus);
    return rel;
  }
  return IntMatrix(pair_count(n), 0);
}

Nil2Group piece_group(const SmoothPiece& piece) {
  return Nil2Group(piece.expected_rank(), piece.relations(), piece.tau_images, piece.name);
}

void validate_piece(const SmoothPiece& piece) {
  const std::string where = "piece '" + piece.name + "'";
  if (piece.genus < 0) throw SpecError(where + ": negative genus");
  if (piece.ovals < 0) throw SpecError(where + ": negative number of ovals");
  if (piece.kind == PieceKind::proper && !piece.punctures.empty())
    throw SpecError(where + ": a proper piece cannot have punctures");
  if (piece.kind == PieceKind::punctured && piece.punctures.empty())
    throw SpecError(where + ": a punctured piece needs at least one puncture");
  const Index n = piece.expected_rank();
  if (piece.tau.rows() != n || piece.tau.cols() != n)
    throw SpecError(where + ": tau must be " + std::to_string(n) + "x" + std::to_string(n));
  if (!same_entries(IntMatrix(piece.tau * piece.tau), identity_matrix<Integer>(n)))
    throw SpecError(where + ": tau does not square to the identity");
  if (static_cast<Index>(piece.tau_images.size()) != n)
    throw SpecError(where + ": expected " + std::to_string(n) + " generator images");
  for (Index i = 0; i < n; ++i) {
    const auto& img = piece.tau_images[static_cast<std::size_t>(i)];
    if (img.v.size() != n || img.z.size() != pair_count(n))
      throw SpecError(where + ": generator image " + std::to_string(i) + " has the wrong shape");
    if (!same_entries(img.v, IntVector(piece.tau.col(i))))
      throw SpecError(where + ": generator image " + std::to_string(i) + " does not abelianize to column " +
                      std::to_string(i) + " of tau");
  }
  if (static_cast<Index>(piece.components.size()) != piece.ovals)
    throw SpecError(where + ": " + std::to_string(piece.ovals) + " ovals but " +
                    std::to_string(piece.components.size()) + " real components listed");
  if (piece.components.empty() && !(piece.kind == PieceKind::proper && piece.genus == 0))
    throw SpecError(where + ": pieces without real points are only modeled in genus 0");
  if (!piece.components.empty() &&
      (piece.base_component < 0 || piece.base_component >= static_cast<Index>(piece.components.size())))
    throw SpecError(where + ": base_component out of range");

  if (piece.kind == PieceKind::proper && piece.genus > 0) {
    IntVector omega = symplectic_class<Integer>(piece.genus);
    IntVector image = exterior_square_map(piece.tau) * omega;
    if (!same_entries(image, IntVector(-omega)))
      throw SpecError(where + ": the involution must act on the fundamental class by -1");
  }

  std::optional<Nil2Group> group;
  try {
    group.emplace(piece_group(piece));
  } catch (const std::invalid_argument& e) {
    throw SpecError(where + ": " + e.what());
  }
  for (std::size_t c = 0; c < piece.components.size(); ++c) {
    const auto& comp = piece.components[c];
    if (comp.lift.v.size() != n || comp.lift.z.size() != pair_count(n))
      throw SpecError(where + ": lift of component '" + comp.label + "' has the wrong shape");
    Nil2Element l = group->from_wedge(comp.lift.v, comp.lift.z);
    if (group->compose(l, group->apply_tau(l)) != group->identity())
      throw SpecError(where + ": lift of component '" + comp.label + "' does not satisfy l tau(l) = 1");
    if (static_cast<Index>(c) == piece.base_component && l != group->identity())
      throw SpecError(where + ": the base component must have the trivial lift");
  }
}

PointedSet pi0_real(const CurveSpec& spec) {
  Plan plan = make_plan(spec);
  Assembler as(spec, plan);
  as.run();
  return pointed_set(spec, as);
}

EquivariantPi1Data build(const CurveSpec& spec) {
  for (const auto& piece : spec.pieces) validate_piece(piece);
  Plan plan = make_plan(spec);
  Assembler as(spec, plan);
  as.enable_algebra();
  as.run();

  const Index n = as.rank();
  EquivariantPi1Data data;
  data.name = spec.name;

  std::vector<IntVector> rels;
  for (Index p = 0; p < static_cast<Index>(spec.pieces.size()); ++p) {
    const auto& piece = spec.pieces[static_cast<std::size_t>(p)];
    IntMatrix r = piece.relations();
    for (Index c = 0; c < r.cols(); ++c) rels.push_back(as.embed_wedge(p, r.col(c)));
    if (!piece.has_real_points()) {
      data.hypotheses_met = false;
      data.warnings.push_back("piece '" + piece_label(spec, p) + "' has no real points");
    }
  }
  IntMatrix relations(pair_count(n), static_cast<Index>(rels.size()));
  for (std::size_t c = 0; c < rels.size(); ++c) relations.col(static_cast<Index>(c)) = rels[c];
  data.surface_relations = relations.cols();

  data.nil2 = std::make_shared<const Nil2Group>(n, relations, as.images(),
                                                spec.name.empty() ? std::string("curve") : spec.name);
  const Nil2Group& G = *data.nil2;

  data.pi0_real = pointed_set(spec, as);
  for (Index root : as.table().roots()) {
    const Nil2Element& raw = as.lift(root);
    Nil2Element l = G.from_wedge(raw.v, raw.z);
    if (G.compose(l, G.apply_tau(l)) != G.identity())
      throw std::logic_error("assembled lift of component '" + as.table().label(root) + "' is not a twisted cocycle");
    data.kappa_lifts.push_back(l);
    data.kappa_classes.emplace_back(data.nil2->abelianization_ptr(), 1, l.v);
  }
  return data;
}

AdjunctionReport verify_unit_adjunction(const EquivariantPi1Data& data) {
  AdjunctionReport rep;
  const FinAbGroup first = h1(data.abelianization());
  rep.h1_dimension = first.num_generators();
  for (const auto& k : data.kappa_classes) rep.kappa_coordinates.push_back(first.f2_coordinates(k.rep()));
  if (!data.hypotheses_met) {
    rep.gated = true;
    rep.gate_reason = "normalization has a component without real points";
    for (const auto& w : data.warnings) rep.gate_reason += "; " + w;
    return rep;
  }

  const auto base = static_cast<std::size_t>(data.pi0_real.base);
  rep.base_zero = f2::is_zero(rep.kappa_coordinates[base]);
  if (!rep.base_zero) rep.failures.push_back("base component has nonzero class");

  std::vector<F2Vector> others;
  for (std::size_t i = 0; i < rep.kappa_coordinates.size(); ++i)
    if (i != base) others.push_back(rep.kappa_coordinates[i]);

  rep.distinct_nonzero = true;
  for (std::size_t i = 0; i < others.size(); ++i) {
    if (f2::is_zero(others[i])) {
      rep.distinct_nonzero = false;
      rep.failures.push_back("non-base component has the zero class");
    }
    for (std::size_t j = i + 1; j < others.size(); ++j)
      if (others[i] == others[j]) {
        rep.distinct_nonzero = false;
        rep.failures.push_back("two non-base components share a class");
      }
  }

  const Index independent = static_cast<Index>(f2::rank(others));
  rep.basis = static_cast<Index>(others.size()) == rep.h1_dimension && independent == rep.h1_dimension;
  if (!rep.basis)
    rep.failures.push_back(std::to_string(others.size()) + " non-base classes of rank " + std::to_string(independent) +
                           " in H^1 of dimension " + std::to_string(rep.h1_dimension));
  return rep;
}

FreeVectorSpace sym_pi0(const EquivariantPi1Data& data) {
  FreeVectorSpace out;
  const Index points = data.pi0_real.size();
  out.dimension = points - 1;
  Index k = 0;
  for (Index i = 0; i < points; ++i) {
    F2Vector u(static_cast<std::size_t>(out.dimension), 0);
    if (i != data.pi0_real.base) {
      u[static_cast<std::size_t>(k++)] = 1;
      out.basis_labels.push_back(data.pi0_real.labels[static_cast<std::size_t>(i)]);
    }
    out.unit.push_back(u);
  }
  return out;
}

std::vector<F2Vector> sym_to_h1(const EquivariantPi1Data& data, const FreeVectorSpace& sym) {
  const FinAbGroup first = h1(data.abelianization());
  std::vector<F2Vector> cols;
  for (Index i = 0; i < data.pi0_real.size(); ++i)
    if (i != data.pi0_real.base)
      cols.push_back(first.f2_coordinates(data.kappa_classes[static_cast<std::size_t>(i)].rep()));
  if (static_cast<Index>(cols.size()) != sym.dimension) throw std::invalid_argument("vector space does not match data");
  return cols;
}

bool unit_matches_kappa(const EquivariantPi1Data& data) {
  const FinAbGroup first = h1(data.abelianization());
  const auto sym = sym_pi0(data);
  const auto cols = sym_to_h1(data, sym);
  for (Index i = 0; i < data.pi0_real.size(); ++i) {
    F2Vector image(static_cast<std::size_t>(first.num_generators()), 0);
    const auto& u = sym.unit[static_cast<std::size_t>(i)];
    for (std::size_t b = 0; b < u.size(); ++b)
      if (u[b]) image = f2::add(image, cols[b]);
    if (image != first.f2_coordinates(data.kappa_classes[static_cast<std::size_t>(i)].rep())) return false;
  }
  return true;
}

}  // namespace nilsect
