#include "fc/step_function.hpp"

#include <cmath>
#include <string>

#include "fc/error.hpp"

namespace fc {

StepFunction::StepFunction(Partition partition, std::vector<double> values)
    : partition_(std::move(partition)), values_(std::move(values)) {
  if (values_.size() != partition_.cells()) {
    throw UsageError("step function has " + std::to_string(values_.size()) + " values for " +
                     std::to_string(partition_.cells()) + " cells");
  }
  for (const double v : values_) {
    if (!std::isfinite(v)) throw UsageError("step function values must be finite");
  }
}

double StepFunction::operator()(double x) const {
  if (values_.empty()) {
    if (x != a()) throw UsageError("point lies outside the step function's interval");
    return 0.0;
  }
  return values_[partition_.locate(x)];
}

}  // namespace fc
