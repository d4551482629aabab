#pragma once

#include <optional>
#include <string>
#include <vector>

#include "edgemc/edge_growth.hpp"
#include "edgemc/volume.hpp"

namespace edgemc::tools {

/// Named test volumes with the threshold and seed region they are meant to
/// be reconstructed with.
struct Preset {
  std::string name;
  Volume volume;
  double threshold;
  SeedRegion seeds;
};

/// mc-example, sphere, shell, two-spheres. Throws std::invalid_argument.
Preset preset(const std::string& name);

const std::vector<std::string>& preset_names();

}  // namespace edgemc::tools
