#pragma once
//
// pinterp.hpp : umbrella header for the whole library.
//

#include "pinterp/acceptance.hpp"
#include "pinterp/approx.hpp"
#include "pinterp/certified.hpp"
#include "pinterp/extremes.hpp"
#include "pinterp/kernels.hpp"
#include "pinterp/quadrature.hpp"
#include "pinterp/specfun.hpp"
#include "pinterp/trig.hpp"
