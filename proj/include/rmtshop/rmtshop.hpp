#pragma once

// Umbrella header.

#include "rmtshop/engine.hpp"
#include "rmtshop/evolve.hpp"
#include "rmtshop/instance_io.hpp"
#include "rmtshop/lp_export.hpp"
#include "rmtshop/model.hpp"
#include "rmtshop/oracle.hpp"
#include "rmtshop/report.hpp"
#include "rmtshop/rng.hpp"
#include "rmtshop/svg.hpp"
#include "rmtshop/validator.hpp"
