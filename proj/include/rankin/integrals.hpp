#pragma once

#include "rankin/factors.hpp"
#include "rankin/integrals/godement.hpp"
#include "rankin/integrals/numeric.hpp"
#include "rankin/integrals/open_orbit.hpp"
#include "rankin/integrals/rankin_selberg.hpp"
#include "rankin/integrals/strip.hpp"
#include "rankin/integrals/tate.hpp"
#include "rankin/integrals/whittaker.hpp"
