#pragma once

#include "vrpsl/Instance.h"
#include "vrpsl/Solution.h"

#include <vector>

namespace vrpsl {

// Optimal segmentation of a giant tour into at most fleetSize routes under
// the penalized route cost. Visit selection and order are untouched; capacity
// violations are allowed at penalized cost, so every tour is decodable.
Solution splitGiantTour(const std::vector<int>& giantTour, const Instance& inst,
                        const PenaltyState& pen);

} // namespace vrpsl
