#include "presets.hpp"

#include <stdexcept>

namespace edgemc::tools {

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"mc-example", "sphere", "shell", "two-spheres"};
  return names;
}

Preset preset(const std::string& name) {
  if (name == "mc-example") return {name, mc_example(100.0), 50.0, MiddleLayer{}};
  // Integer center: a half-integer one leaves the middle layer without
  // single-corner cells.
  if (name == "sphere") return {name, gen_sphere({20, 20, 20}, {10, 10, 10}, 8.0, 100.0f, 0.0f), 50.0, MiddleLayer{}};
  // Layer 26 cuts the outer surface above the cavity.
  if (name == "shell") {
    return {name, gen_shell({32, 32, 32}, {15.5, 15.5, 15.5}, 12.2, 6.3, 100.0f, 0.0f), 50.0, SeedLayer{26}};
  }
  if (name == "two-spheres") {
    return {name,
            gen_two_spheres({40, 24, 24}, {10, 11.5, 11.5}, 6.3, {29, 11.5, 11.5}, 6.3, 100.0f, 0.0f),
            50.0,
            SeedBox{0, 20, 0, 23, 0, 23}};
  }
  throw std::invalid_argument("unknown dataset '" + name + "'");
}

}  // namespace edgemc::tools
