#pragma once

// Umbrella header.

#include "metafun/crossbreed.hpp"
#include "metafun/error.hpp"
#include "metafun/hybrid.hpp"
#include "metafun/io/serialize.hpp"
#include "metafun/ladder.hpp"
#include "metafun/levelset.hpp"
#include "metafun/numerics/quadrature.hpp"
#include "metafun/numerics/roots.hpp"
#include "metafun/pipeline.hpp"
#include "metafun/scheme.hpp"
#include "metafun/specfun/bessel.hpp"
#include "metafun/specfun/function_tag.hpp"
#include "metafun/specfun/gamma.hpp"
#include "metafun/specfun/jacobi.hpp"
#include "metafun/specfun/zeta.hpp"
