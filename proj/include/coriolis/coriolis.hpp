#pragma once

#include "coriolis/ac_phase.hpp"
#include "coriolis/analytic.hpp"
#include "coriolis/errors.hpp"
#include "coriolis/grid.hpp"
#include "coriolis/hermite.hpp"
#include "coriolis/lattice.hpp"
#include "coriolis/rotor.hpp"
#include "coriolis/spectral.hpp"
#include "coriolis/tridiag.hpp"
#include "coriolis/units.hpp"
#include "coriolis/vec3.hpp"
