#ifndef PHASEKIT_PHASEKIT_HPP
#define PHASEKIT_PHASEKIT_HPP

#include "phasekit/config.hpp"
#include "phasekit/cutpoint.hpp"
#include "phasekit/erdelyi.hpp"
#include "phasekit/model.hpp"
#include "phasekit/numerics.hpp"
#include "phasekit/oracle.hpp"
#include "phasekit/quadratic.hpp"
#include "phasekit/report.hpp"
#include "phasekit/runner.hpp"
#include "phasekit/schrodinger.hpp"
#include "phasekit/substitution.hpp"
#include "phasekit/types.hpp"

#endif  // PHASEKIT_PHASEKIT_HPP
