#pragma once

namespace lrc {

/// Numerical thresholds shared by every stage of the pipeline.
struct Tolerances {
  double scenario = 1e-12;  // relative; scenario classification
  double subspace = 1e-10;  // reciprocal condition below which a branch is rejected
  double residual = 1e-9;   // solvent / factorization identity bound
  double roots = 1e-13;     // Newton polishing target, relative to coefficient scale
  double compare = 1e-6;    // closed-form vs numerical match threshold
  double ep = 1e-8;         // bisection width for exceptional points

  bool all_positive() const {
    return scenario > 0 && subspace > 0 && residual > 0 && roots > 0 && compare > 0 && ep > 0;
  }
};

}  // namespace lrc
