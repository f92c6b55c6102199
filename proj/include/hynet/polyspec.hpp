#pragma once

#include <string>

#include "hynet/admissible.hpp"
#include "hynet/poly.hpp"

namespace hynet {

// Polynomial mini-language over a schema's slots, e.g.
//   "2*Y[0]^2 - 1/3*E[agg][0][1][0]*E[agg][0][2][0] + L"
// Slots: Y[comp], E[etype][edge][pos][comp] with 1-based source position,
// L for the parameter.
Poly parse_poly(const std::string& text, const InputSchema& schema);

std::string format_poly(const Poly& p, const InputSchema& schema);

}  // namespace hynet
