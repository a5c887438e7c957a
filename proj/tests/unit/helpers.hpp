#pragma once

#include "doctest.h"
#include "qnet/opalg.hpp"

namespace qnet::test {

inline double max_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

inline SpacePtr net_space() {
  return make_space({{"Q1", 2}, {"Q2", 2}, {"Q3", 2}, {"R1", 2}, {"R2", 2}});
}

}  // namespace qnet::test
