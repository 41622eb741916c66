#include "nilsect/corpus.hpp"

#include "nilsect/presets.hpp"
#include "nilsect/random.hpp"

#include <functional>

namespace nilsect {

namespace {

struct Entry {
  const char* name;
  std::function<SmoothPiece()> make;
};

const std::vector<Entry>& library() {
  static const std::vector<Entry> lib = {
      {"real_conic", presets::real_conic},
      {"punctured_line_2", presets::punctured_line_2},
      {"punctured_line_3", presets::punctured_line_3},
      {"line_minus_pair", presets::line_minus_pair},
      {"line_minus_real_and_pair", presets::line_minus_real_and_pair},
      {"elliptic_d", [] { return presets::surface("d"); }},
      {"elliptic_s", [] { return presets::surface("s"); }},
      {"genus2_dd", [] { return presets::surface("dd"); }},
      {"genus2_ds", [] { return presets::surface("ds"); }},
      {"genus2_ss", [] { return presets::surface("ss"); }},
      {"punctured_elliptic_d", [] { return presets::punctured_surface("d"); }},
      {"punctured_elliptic_s", [] { return presets::punctured_surface("s"); }},
  };
  return lib;
}

class Builder {
 public:
  Builder(Rng& rng, const CorpusOptions& opt) : rng_(rng), opt_(opt) {}

  CurveSpec make(std::string name, bool with_pointless) {
    CurveSpec spec;
    spec.name = std::move(name);
    rank_ = 0;
    const Index budget = opt_.max_rank - (with_pointless ? 1 : 0);

    add_piece(spec, pick(budget));
    spec.base = ComponentRef{0, draw(rng_, 0, static_cast<Index>(spec.pieces[0].components.size()) - 1)};

    const Index extra_pieces = draw(rng_, 0, opt_.max_pieces - 1);
    for (Index k = 0; k < extra_pieces; ++k) {
      // a conjugate wedge costs one generator, a real wedge none
      const bool conjugate = coin(rng_) && rank_ + 1 <= budget;
      const Index room = budget - rank_ - (conjugate ? 1 : 0);
      auto piece = pick(room);
      if (!piece) break;
      attach(spec, std::move(*piece), conjugate);
    }
    if (with_pointless && rank_ + 1 <= opt_.max_rank) attach(spec, presets::pointless_conic(), true);

    const Index extra = draw(rng_, 0, opt_.max_extra_gluings);
    for (Index k = 0; k < extra; ++k) add_node(spec);
    shuffle_gluings(spec);
    return spec;
  }

 private:
  std::optional<SmoothPiece> pick(Index room) {
    std::vector<std::size_t> fits;
    for (std::size_t i = 0; i < library().size(); ++i)
      if (library()[i].make().expected_rank() <= room) fits.push_back(i);
    if (fits.empty()) return std::nullopt;
    return library()[fits[static_cast<std::size_t>(draw(rng_, 0, static_cast<Index>(fits.size()) - 1))]].make();
  }

  void add_piece(CurveSpec& spec, std::optional<SmoothPiece> piece) {
    piece->name += "_" + std::to_string(spec.pieces.size());
    rank_ += piece->expected_rank();
    spec.pieces.push_back(std::move(*piece));
  }

  GluePoint random_real_point(const CurveSpec& spec, Index upto) {
    std::vector<Index> hosts;
    for (Index p = 0; p < upto; ++p)
      if (!spec.pieces[static_cast<std::size_t>(p)].components.empty()) hosts.push_back(p);
    const Index p = hosts[static_cast<std::size_t>(draw(rng_, 0, static_cast<Index>(hosts.size()) - 1))];
    const Index comps = static_cast<Index>(spec.pieces[static_cast<std::size_t>(p)].components.size());
    return GluePoint{p, Orbit::fixed, draw(rng_, 0, comps - 1)};
  }

  GluePoint random_pair_point(Index upto) { return GluePoint{draw(rng_, 0, upto - 1), Orbit::swapped, 0}; }

  void attach(CurveSpec& spec, SmoothPiece piece, bool conjugate) {
    const Index existing = static_cast<Index>(spec.pieces.size());
    conjugate = conjugate || piece.components.empty();
    add_piece(spec, std::move(piece));
    const Index fresh = existing;
    NodeGluing g;
    g.relation = GlueRelation::identify;
    if (conjugate) {
      ++rank_;
      g.points = {random_pair_point(existing), GluePoint{fresh, Orbit::swapped, 0}};
    } else {
      const Index comps = static_cast<Index>(spec.pieces[static_cast<std::size_t>(fresh)].components.size());
      g.points = {random_real_point(spec, existing), GluePoint{fresh, Orbit::fixed, draw(rng_, 0, comps - 1)}};
    }
    if (coin(rng_)) std::swap(g.points[0], g.points[1]);
    spec.gluings.push_back(std::move(g));
  }

  void add_node(CurveSpec& spec) {
    const Index pieces = static_cast<Index>(spec.pieces.size());
    const Index room = opt_.max_rank - rank_;
    if (room < 1) return;
    NodeGluing g;
    switch (draw(rng_, 0, 2)) {
      case 0:
        g.relation = GlueRelation::identify;
        g.points = {random_real_point(spec, pieces), random_real_point(spec, pieces)};
        rank_ += 1;
        break;
      case 1:
        g.relation = GlueRelation::conjugate_self;
        g.points = {random_pair_point(pieces)};
        rank_ += 1;
        break;
      default:
        if (room < 2) return;
        g.relation = GlueRelation::identify;
        g.points = {random_pair_point(pieces), random_pair_point(pieces)};
        rank_ += 2;
        break;
    }
    spec.gluings.push_back(std::move(g));
  }

  void shuffle_gluings(CurveSpec& spec) {
    auto& g = spec.gluings;
    for (std::size_t i = g.size(); i > 1; --i)
      std::swap(g[i - 1], g[static_cast<std::size_t>(draw(rng_, 0, static_cast<Index>(i) - 1))]);
  }

  Rng& rng_;
  const CorpusOptions& opt_;
  Index rank_ = 0;
};

}  // namespace

std::vector<CurveSpec> corpus_generate(std::uint64_t seed, Index size, const CorpusOptions& options) {
  if (size < 1) throw std::invalid_argument("corpus size must be at least 1");
  Rng rng(seed);
  Builder builder(rng, options);
  std::vector<CurveSpec> out;
  for (Index i = 0; i < size; ++i) {
    const bool pointless = options.pointless_every > 0 && i % options.pointless_every == options.pointless_every - 1;
    out.push_back(builder.make("corpus_" + std::to_string(seed) + "_" + std::to_string(i), pointless));
  }
  return out;
}

}  // namespace nilsect
