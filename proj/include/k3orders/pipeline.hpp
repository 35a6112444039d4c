#pragma once

#include "k3orders/report.hpp"
#include "k3orders/scenario.hpp"

namespace k3orders {

/// Run every verification stage of a scenario and collect the outcome.
///
/// Stages run in a fixed order: sublattice signature, embedding checks,
/// involution checks, ambient extension, cohomology, effectivity
/// certificates, ample/nodal certification, fixed lattice and halved form,
/// quotient identification, tangency pattern, fixed-component exclusion,
/// and order bookkeeping.  A structural failure (an exception, a
/// non-integral extension, a non-spanning generator family, ...) marks later
/// stages as skipped; a value mismatch against a declared expectation fails
/// its own check but lets the run continue.
///
/// `list_cap` bounds how many order classes are materialized in the report.
Report run_scenario(const Scenario& s, std::size_t list_cap = 256);

}  // namespace k3orders
