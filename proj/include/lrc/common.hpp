#pragma once

#include <Eigen/Core>

#include <complex>
#include <stdexcept>
#include <string>

namespace lrc {

using Complex = std::complex<double>;
using Mat2c = Eigen::Matrix2cd;
using Mat2d = Eigen::Matrix2d;
using Vec2c = Eigen::Vector2cd;

inline constexpr Complex kJ{0.0, 1.0};

/// Largest entry magnitude.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

// -----------------------------------------------------------------------------
// Errors. Everything thrown by the library derives from lrc::Error so callers
// can separate input problems from programming errors.
// -----------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define LRC_DEFINE_ERROR(Name)          \
  class Name : public Error {           \
   public:                              \
    using Error::Error;                 \
  }

LRC_DEFINE_ERROR(NonPositiveElement);
LRC_DEFINE_ERROR(OvercoupledError);
LRC_DEFINE_ERROR(NonFiniteInput);
LRC_DEFINE_ERROR(SingularLeadingCoefficient);
LRC_DEFINE_ERROR(DegenerateLeadingCoefficient);
LRC_DEFINE_ERROR(InconsistentInputs);
LRC_DEFINE_ERROR(RejectedBranch);
LRC_DEFINE_ERROR(NoSignChange);
LRC_DEFINE_ERROR(BranchTrackingLost);
LRC_DEFINE_ERROR(WrongScenario);
LRC_DEFINE_ERROR(ReductionFailure);
LRC_DEFINE_ERROR(InvalidGrid);
LRC_DEFINE_ERROR(ParameterFileError);

#undef LRC_DEFINE_ERROR

/// Root polishing hit its iteration cap above the residual bound.
class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, Complex best_iterate, double best_residual)
      : Error(what), best_iterate_(best_iterate), best_residual_(best_residual) {}

  Complex best_iterate() const { return best_iterate_; }
  double best_residual() const { return best_residual_; }

 private:
  Complex best_iterate_;
  double best_residual_;
};

/// A sweep cell could not be evaluated.
class GridPointFailure : public Error {
 public:
  GridPointFailure(double m, double g, const std::string& cause)
      : Error("grid point (m=" + std::to_string(m) + ", g=" + std::to_string(g) +
              ") failed: " + cause),
        m_(m),
        g_(g),
        cause_(cause) {}

  double m() const { return m_; }
  double g() const { return g_; }
  const std::string& cause() const { return cause_; }

 private:
  double m_;
  double g_;
  std::string cause_;
};

}  // namespace lrc
