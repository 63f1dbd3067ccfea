// Umbrella header.
#pragma once

#include "opengossip/analytic.hpp"
#include "opengossip/compare.hpp"
#include "opengossip/config.hpp"
#include "opengossip/core.hpp"
#include "opengossip/csv.hpp"
#include "opengossip/events.hpp"
#include "opengossip/oracle.hpp"
#include "opengossip/rng.hpp"
#include "opengossip/sim.hpp"
#include "opengossip/trajectory.hpp"
