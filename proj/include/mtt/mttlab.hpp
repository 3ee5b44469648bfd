#pragma once

// Umbrella header for the whole engine.

#include "mtt/rational.hpp"   // exact scalars
#include "mtt/matrix.hpp"     // exact dense linear algebra
#include "mtt/laurent.hpp"    // graded polynomials
#include "mtt/complex.hpp"    // bounded complexes, cones, homology
#include "mtt/hom.hpp"        // Hom complexes and Poincare data
#include "mtt/transport.hpp"  // tensor-kernel transport functors
#include "mtt/datum.hpp"      // the transport datum and channel pipeline
#include "mtt/checks.hpp"     // LES / visibility / bridge verifiers
#include "mtt/rng.hpp"        // seeded deterministic generation
#include "mtt/models.hpp"     // demo + random instance generators, oracle
#include "mtt/verify.hpp"     // property suites
#include "mtt/serialize.hpp"  // JSON interchange
#include "mtt/report.hpp"     // report rendering
