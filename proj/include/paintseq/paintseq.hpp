#pragma once

// Umbrella header for the paint shop sequencing toolkit.

#include "paintseq/errors.hpp"    // IWYU pragma: export
#include "paintseq/exact.hpp"     // IWYU pragma: export
#include "paintseq/io.hpp"        // IWYU pragma: export
#include "paintseq/problem.hpp"   // IWYU pragma: export
#include "paintseq/qaoa.hpp"      // IWYU pragma: export
#include "paintseq/qubo.hpp"      // IWYU pragma: export
#include "paintseq/statevector.hpp"  // IWYU pragma: export
#include "paintseq/version.hpp"   // IWYU pragma: export
