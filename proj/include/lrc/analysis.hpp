#pragma once

#include "lrc/hamiltonian.hpp"
#include "lrc/tolerances.hpp"

namespace lrc {

/// Everything the pipeline derives from one normalized circuit.
struct Analysis {
  NormalizedCircuit circuit;
  QuadraticPencil pencil;
  QuarticCoefficients quartic;
  RootSet roots;
  BranchSet branches;
};

/// pencil → quartic → oracle roots → branch enumeration.
Analysis analyze(const NormalizedCircuit& circuit, const Tolerances& tol = {});

}  // namespace lrc
