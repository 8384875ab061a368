#pragma once

#include "tscalc/calculus.hpp"
#include "tscalc/error.hpp"
#include "tscalc/expr.hpp"
#include "tscalc/properties.hpp"
#include "tscalc/quadrature.hpp"
#include "tscalc/timescale.hpp"
