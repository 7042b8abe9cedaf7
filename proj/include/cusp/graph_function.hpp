#pragma once

#include <memory>

#include "cusp/spectral.hpp"

namespace cusp {

/// A scalar field u on the slice grid describing the graph r = r0 + u(x),
/// with its mean value and discrete C^2 norms cached at construction.
/// Immutable; copies share the spectral engine.
class GraphFunction {
 public:
  GraphFunction(std::shared_ptr<const Spectral> spectral, Field values)
      : spectral_(std::move(spectral)), values_(std::move(values)) {
    if (long(values_.size()) != spectral_->slice().total())
      throw ConfigError(0, "graph function does not match the slice grid");
    mean_ = spectral_->mean(values_);
    norms_ = spectral_->norms(values_);
  }

  static GraphFunction zero(std::shared_ptr<const Spectral> spectral) {
    Field f = zero_field(spectral->slice());
    return GraphFunction(std::move(spectral), std::move(f));
  }

  const Field& values() const { return values_; }
  const SliceSpec& slice() const { return spectral_->slice(); }
  const Spectral& spectral() const { return *spectral_; }
  std::shared_ptr<const Spectral> spectral_ptr() const { return spectral_; }

  double mean() const { return mean_; }
  const DiscreteNorms& norms() const { return norms_; }
  double n2() const { return norms_.n2; }

  GraphFunction scaled(double t) const {
    Field f(values_);
    for (double& v : f) v *= t;
    return GraphFunction(spectral_, std::move(f));
  }

  GraphFunction plus(const Field& w, double scale = 1.0) const {
    Field f(values_);
    for (size_t p = 0; p < f.size(); ++p) f[p] += scale * w[p];
    return GraphFunction(spectral_, std::move(f));
  }

 private:
  std::shared_ptr<const Spectral> spectral_;
  Field values_;
  double mean_ = 0.0;
  DiscreteNorms norms_;
};

}  // namespace cusp
