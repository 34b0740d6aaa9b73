#pragma once

#include "rankin/verify/checks.hpp"
#include "rankin/verify/report.hpp"
#include "rankin/verify/sampler.hpp"
#include "rankin/verify/serialize.hpp"
#include "rankin/verify/suite.hpp"
