#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gausschain/chain_model.hpp"
#include "gausschain/symplectic.hpp"

namespace gausschain {

/// Time-independent squeezes and time-dependent rotator parameters of the
/// normal modes, indexed like EigenSystem rows.
///
/// Full model: s_j = ln(2 E_j / omega) / 4 and phi_j = (t / 2) sqrt(2 E_j omega).
/// Rotating-wave model: s_j = 0 and phi_j = E_j t.
/// A Rotator with parameter phi_j turns the mode by 2 phi_j in phase space.
struct ModeSchedule {
  Eigen::VectorXd squeeze;
  Eigen::VectorXd angles;
};

/// Propagator U(t) as gates in temporal order:
///   [couplers] [squeezers(-s)] [rotators(phi)] [squeezers(+s)] [inverse couplers]
/// The coupler layer maps site quadratures onto normal-mode quadratures, so
/// the gates in between act on normal mode j through slot j.
struct GateSequence {
  std::vector<Gate> gates;
  int n = 0;
  double t = 0.0;
  ChainSpec spec;
};

/// Givens factorization of the mode matrix into couplers.
///
/// The returned couplers, applied in order, realize x -> (alpha (x) 1_2) x,
/// where alpha is es.mode_matrix with its last row negated when
/// det(mode_matrix) = -1 (couplers only reach SO(n)). Pivot column by
/// column, eliminating sub-diagonal entries top to bottom; at most
/// n(n-1)/2 couplers.
std::vector<Coupler> coupler_pattern(const EigenSystem& es);

/// n x n orthogonal matrix realized by couplers on either quadrature.
Eigen::MatrixXd coupler_product(std::span<const Coupler> couplers, int n);

ModeSchedule mode_schedule(const EigenSystem& es, const ChainSpec& spec, double t);

GateSequence build_propagator(const ChainSpec& spec, double t);

/// Same as build_propagator with a caller-supplied coupler layer. The
/// layer's product must match the mode matrix up to row signs (1e-10).
GateSequence build_propagator(const ChainSpec& spec, double t, std::span<const Coupler> pattern);

Symplectic to_symplectic(const GateSequence& seq);

/// True iff the sequence is couplers/squeezers/rotators/squeezers/couplers
/// with the trailing layers exactly inverting the leading ones.
bool is_palindromic(const GateSequence& seq);

/// One gate per line: "coupler <j> <k> <theta>", "squeezer <j> <s>",
/// "rotator <j> <phi>"; 17 significant digits; temporal order.
std::string export_circuit(const GateSequence& seq);
std::string export_circuit(std::span<const Gate> gates);

/// Inverse of export_circuit. Blank lines and '#' comments are ignored.
/// Throws std::invalid_argument naming the offending line.
std::vector<Gate> parse_circuit(std::string_view text);

std::string format_gate(const Gate& gate);

}  // namespace gausschain
