#pragma once

// Random curve specs built from the preset pieces and valid gluings.

#include "nilsect/curve.hpp"

#include <cstdint>
#include <vector>

namespace nilsect {

struct CorpusOptions {
  Index max_rank = 6;
  Index max_pieces = 3;
  Index max_extra_gluings = 2;
  /// One spec in this many includes a piece without real points.
  Index pointless_every = 8;
};

/// Deterministic in (seed, size, options).
std::vector<CurveSpec> corpus_generate(std::uint64_t seed, Index size, const CorpusOptions& options = {});

}  // namespace nilsect
