#pragma once

#include "lrc/common.hpp"

#include <Eigen/LU>
#include <doctest.h>

#include <cmath>

inline void check_close(lrc::Complex got, lrc::Complex want, double tol) {
  INFO("got " << got << ", want " << want);
  CHECK(std::abs(got - want) <= tol);
}

inline void check_close(double got, double want, double tol) {
  INFO("got " << got << ", want " << want);
  CHECK(std::abs(got - want) <= tol);
}
