#pragma once

#include <cstdint>

#include "twistdec/checks.hpp"

namespace twistdec::app {

// Seeded property battery over the gallery and the synthetic generators.
// Each property adds one check; the per-property details go to `report`.
void run_suite(std::uint64_t seed, const Tolerance& tol, Checks& checks, Json& report);

}  // namespace twistdec::app
