#pragma once

// Umbrella header: the whole library.

#include "fedcarbon/carbon.hpp"
#include "fedcarbon/commands.hpp"
#include "fedcarbon/dataset.hpp"
#include "fedcarbon/energy.hpp"
#include "fedcarbon/error.hpp"
#include "fedcarbon/model.hpp"
#include "fedcarbon/policy.hpp"
#include "fedcarbon/profiles.hpp"
#include "fedcarbon/regions.hpp"
#include "fedcarbon/report.hpp"
#include "fedcarbon/rng.hpp"
#include "fedcarbon/scenario_io.hpp"
#include "fedcarbon/scenarios.hpp"
#include "fedcarbon/schedule.hpp"
#include "fedcarbon/sim.hpp"
#include "fedcarbon/units.hpp"
#include "fedcarbon/version.hpp"
