#pragma once

#include "sigmafrac/errors.hpp"
#include "sigmafrac/fde.hpp"
#include "sigmafrac/fracderiv.hpp"
#include "sigmafrac/grid_function.hpp"
#include "sigmafrac/kernels.hpp"
#include "sigmafrac/l1reg.hpp"
#include "sigmafrac/optimizer.hpp"
#include "sigmafrac/quadrature.hpp"
#include "sigmafrac/special_functions.hpp"
#include "sigmafrac/theorems.hpp"
#include "sigmafrac/transforms.hpp"
