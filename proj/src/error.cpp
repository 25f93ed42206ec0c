#include "fc/error.hpp"

namespace fc {

const char* to_string(Failure f) noexcept {
  switch (f) {
    case Failure::domain: return "domain";
    case Failure::bracket: return "bracket";
    case Failure::iteration_cap: return "iteration_cap";
    case Failure::nesting_violation: return "nesting_violation";
    case Failure::budget_exhausted: return "budget_exhausted";
    case Failure::bound_violation: return "bound_violation";
    case Failure::not_a_cut: return "not_a_cut";
    case Failure::divergence: return "divergence";
    case Failure::one_sided_mismatch: return "one_sided_mismatch";
    case Failure::no_witness: return "no_witness";
    case Failure::derivative_vanishes: return "derivative_vanishes";
    case Failure::not_cauchy: return "not_cauchy";
    case Failure::not_differentiable: return "not_differentiable";
    case Failure::precondition: return "precondition";
    case Failure::window_collapse: return "window_collapse";
    case Failure::not_a_cover: return "not_a_cover";
    case Failure::sweep_stall: return "sweep_stall";
    case Failure::level_cap: return "level_cap";
    case Failure::ill_conditioned: return "ill_conditioned";
    case Failure::endpoint_mismatch: return "endpoint_mismatch";
  }
  return "unknown";
}

OneSidedMismatch::OneSidedMismatch(double left, double right)
    : MathError(Failure::one_sided_mismatch,
                "left limit " + std::to_string(left) + " differs from right limit " + std::to_string(right)),
      left_(left),
      right_(right) {}

}  // namespace fc
