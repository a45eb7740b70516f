#pragma once

#include <vector>

#include "flowclass/numkit/poly.hpp"

namespace flowclass::numkit {

/// All complex roots of p (with multiplicity) by simultaneous Aberth-Ehrlich
/// iteration. A root is accepted once |p(z)| falls below the rounding-error bound
/// of Horner evaluation; throws NonConvergence after max_iter sweeps.
std::vector<ComplexD> polynomial_roots(const PolyD& p, int max_iter = 500);

}  // namespace flowclass::numkit
