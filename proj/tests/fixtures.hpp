// Helpers shared by the simulation-level tests.

#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "smcsim/scenario_io.hpp"

namespace fixtures {

inline std::string scenario_dir() {
    const char* dir = std::getenv("SMCSIM_SCENARIOS");
    if (dir == nullptr || *dir == '\0') {
        throw std::runtime_error("SMCSIM_SCENARIOS is not set; run through ctest");
    }
    return dir;
}

inline smcsim::Scenario load_shipped(const std::string& name) {
    return smcsim::load_scenario_file(scenario_dir() + "/" + name + ".json").scenario;
}

}  // namespace fixtures
