#pragma once

#include "fraclab/errors.hpp"
#include "fraclab/specfun.hpp"
#include "fraclab/quadrature.hpp"
#include "fraclab/gauss.hpp"
#include "fraclab/grid.hpp"
#include "fraclab/kernels.hpp"
#include "fraclab/convolution.hpp"
#include "fraclab/gridops.hpp"
#include "fraclab/gfc.hpp"
#include "fraclab/memory.hpp"
#include "fraclab/ivp.hpp"
#include "fraclab/spectral.hpp"
#include "fraclab/tvp.hpp"
#include "fraclab/maps.hpp"
#include "fraclab/expr.hpp"
