#pragma once

#include "vrpsl/Instance.h"

#include <string>

namespace vrpsl {

// Input conventions layered on the canonical TSPLIB-flavored file format.
//   Vrpsl:   all sections honored, distances rounded unless the header says EUC_2D_EXACT.
//   Cvrplib: plain CVRP file; reduces to 100% service level, zero profits, weight = demand.
//   Vrppfcc: profits are outsourcing costs; service levels forced to 0; exact distances.
//   Cptp:    profits are prizes; service levels forced to 0; exact distances.
enum class InstanceFormat { Vrpsl, Cvrplib, Vrppfcc, Cptp };

InstanceFormat formatFromName(const std::string& name);
std::string formatName(InstanceFormat format);

Instance parseInstance(const std::string& text, InstanceFormat format = InstanceFormat::Vrpsl);
Instance loadInstance(const std::string& path, InstanceFormat format = InstanceFormat::Vrpsl);

std::string serializeInstance(const Instance& inst);
void saveInstance(const Instance& inst, const std::string& path);

} // namespace vrpsl
