#pragma once

#include <cmath>
#include <string>

#include "lifshitz_cp/material_io.hpp"

#ifndef LIFSHITZ_CP_FIXTURE_DIR
#define LIFSHITZ_CP_FIXTURE_DIR "fixtures"
#endif

namespace testing {

inline std::string fixture(const std::string& name) {
  return std::string(LIFSHITZ_CP_FIXTURE_DIR) + "/" + name + ".json";
}

inline lcp::WallModel wall(const std::string& name) { return lcp::load_wall(fixture(name)); }
inline lcp::AtomModel rb() { return lcp::load_atom(fixture("rb")); }

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Test-side unit conversion, written out rather than taken from the library.
inline double ev_to_omega(double ev) { return ev * 1.602176634e-12 / 1.054571817e-27; }

}  // namespace testing
