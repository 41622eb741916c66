#pragma once

// Standard involution models of smooth pieces and the bundled example curves.

#include "nilsect/curve.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nilsect::presets {

/// P^1 with its standard real structure: one oval, trivial pi_1.
SmoothPiece real_conic();
/// The conic x^2 + y^2 + z^2 = 0: no real points.
SmoothPiece pointless_conic();
/// G_m = P^1 - {0, inf}; tau(x) = x^{-1}; arcs (0, inf) and (-inf, 0).
SmoothPiece punctured_line_2();
/// P^1 - {0, 1, inf}; tau(x_i) = x_i^{-1}; arcs (0,1), (1,inf), (-inf,0).
SmoothPiece punctured_line_3();
/// P^1 minus a conjugate pair of points: tau(x) = x, one oval.
SmoothPiece line_minus_pair();
/// P^1 minus one real point and a conjugate pair: tau(x) = y^{-1}, tau(y) = x^{-1}, one arc.
SmoothPiece line_minus_real_and_pair();
/// Proper surface with one character per handle: 'd' (a -> a, b -> b^{-1}, an extra oval
/// with lift b) or 's' (a <-> b). Ovals: 1 + number of 'd' handles.
SmoothPiece surface(const std::string& handles);
/// The same surface minus one real point.
SmoothPiece punctured_surface(const std::string& handles);

/// Names accepted by `by_name`; surfaces take a handle string.
std::vector<std::string> names();
std::optional<SmoothPiece> by_name(const std::string& name, const std::string& handles = {});

/// Spec consisting of one piece, based at its base component.
CurveSpec single(SmoothPiece piece, std::string name);

/// Example curves shipped as spec files.
std::vector<std::pair<std::string, CurveSpec>> bundled_specs();

}  // namespace nilsect::presets
