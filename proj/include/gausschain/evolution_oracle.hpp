#pragma once

#include "gausschain/chain_model.hpp"
#include "gausschain/symplectic.hpp"

namespace gausschain {

/// Heisenberg flow of H = 1/2 x^T G x: x(t) = exp(Omega G t) x(0).
///
/// Independent of the gate decomposition; needs no stability (the
/// exponential exists for any spec with a valid shape).
Symplectic direct_propagator(const ChainSpec& spec, double t);

/// tr(G V): twice the mean energy of a state with covariance V / 2.
double energy_trace(const ChainSpec& spec, const Covariance& v);

}  // namespace gausschain
