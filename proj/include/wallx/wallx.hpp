#pragma once

#include "wallx/error.hpp"
#include "wallx/ratfun.hpp"
#include "wallx/kclass.hpp"
#include "wallx/combinatorics.hpp"
#include "wallx/geom.hpp"
#include "wallx/series.hpp"
#include "wallx/checks.hpp"
#include "wallx/quiver.hpp"
#include "wallx/cache.hpp"
