#ifndef VFSO_VFSO_HPP
#define VFSO_VFSO_HPP

#include "vfso/aggregation.hpp"
#include "vfso/atmosphere.hpp"
#include "vfso/config.hpp"
#include "vfso/core.hpp"
#include "vfso/csv.hpp"
#include "vfso/geometry.hpp"
#include "vfso/hetnet_cost.hpp"
#include "vfso/link_budget.hpp"
#include "vfso/report.hpp"
#include "vfso/scenario.hpp"

#endif
