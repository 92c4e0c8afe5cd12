#pragma once

#include <random>
#include <vector>

#include "partage/estate.hpp"
#include "partage/ratio.hpp"

// Shorthand for exact literals in assertions.
inline partage::Ratio R(const char* text) { return partage::Ratio::parse(text); }

// The fraction grid most suites sweep: both endpoints plus interior values
// with distinct denominators.
inline const std::vector<partage::Ratio>& fraction_grid() {
  static const std::vector<partage::Ratio> grid = {R("0"), R("1/3"), R("1/2"), R("2/5"), R("1")};
  return grid;
}
