#pragma once

#include "errors.hpp"
#include "grid.hpp"
#include "io.hpp"
#include "linalg.hpp"
#include "mixedstate.hpp"
#include "models.hpp"
#include "random.hpp"
#include "search.hpp"
#include "simplex.hpp"
#include "suites.hpp"
#include "uncertainty.hpp"
