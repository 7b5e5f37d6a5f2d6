/// Umbrella header.

#pragma once

#include "smcsim/controllers.hpp"
#include "smcsim/csv.hpp"
#include "smcsim/linalg.hpp"
#include "smcsim/lti.hpp"
#include "smcsim/metrics.hpp"
#include "smcsim/observer.hpp"
#include "smcsim/plant.hpp"
#include "smcsim/report.hpp"
#include "smcsim/scenario_io.hpp"
#include "smcsim/sim.hpp"
#include "smcsim/svg.hpp"
