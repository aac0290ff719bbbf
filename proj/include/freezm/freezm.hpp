#pragma once

// Everything, in dependency order.

#include "freezm/error.hpp"
#include "freezm/integer.hpp"
#include "freezm/lattice.hpp"
#include "freezm/group_ring.hpp"
#include "freezm/form_parameter.hpp"
#include "freezm/norm_ideal.hpp"
#include "freezm/ring_matrix.hpp"
#include "freezm/quadratic_module.hpp"
#include "freezm/complement.hpp"
#include "freezm/lagrangian.hpp"
#include "freezm/ahss.hpp"
#include "freezm/census.hpp"
#include "freezm/json_io.hpp"
#include "freezm/selftest.hpp"
