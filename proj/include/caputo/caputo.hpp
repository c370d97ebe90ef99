#pragma once

/// Umbrella header.

#include "caputo/analysis.hpp"
#include "caputo/dcc.hpp"
#include "caputo/errors.hpp"
#include "caputo/gronwall.hpp"
#include "caputo/harness.hpp"
#include "caputo/kernels.hpp"
#include "caputo/mesh.hpp"
#include "caputo/quadform.hpp"
#include "caputo/solver.hpp"
#include "caputo/special_functions.hpp"
#include "caputo/tridiagonal.hpp"
