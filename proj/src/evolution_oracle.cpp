#include "gausschain/evolution_oracle.hpp"

#include "gausschain/matrix_exponential.hpp"

namespace gausschain {

Symplectic direct_propagator(const ChainSpec& spec, double t) {
  const QuadraticForm form = build_quadratic_form(spec);
  const Eigen::MatrixXd generator = omega_form<double>(spec.n) * form.g * t;
  return Symplectic(matrix_exponential(generator));
}

double energy_trace(const ChainSpec& spec, const Covariance& v) {
  return (build_quadratic_form(spec).g * v.matrix()).trace();
}

}  // namespace gausschain
