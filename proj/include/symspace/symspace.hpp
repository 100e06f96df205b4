#ifndef SYMSPACE_SYMSPACE_HPP
#define SYMSPACE_SYMSPACE_HPP

#include "symspace/cex.hpp"
#include "symspace/concave_majorant.hpp"
#include "symspace/conditions.hpp"
#include "symspace/dilation.hpp"
#include "symspace/embed.hpp"
#include "symspace/errors.hpp"
#include "symspace/exact_scalar.hpp"
#include "symspace/gfun.hpp"
#include "symspace/io.hpp"
#include "symspace/norms.hpp"
#include "symspace/orlicz.hpp"
#include "symspace/report.hpp"
#include "symspace/series.hpp"
#include "symspace/step_function.hpp"
#include "symspace/trend.hpp"

#endif  // SYMSPACE_SYMSPACE_HPP
