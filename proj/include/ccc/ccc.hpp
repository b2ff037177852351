#pragma once

#include "ccc/construct.hpp"
#include "ccc/corr.hpp"
#include "ccc/cyclo.hpp"
#include "ccc/error.hpp"
#include "ccc/matrices.hpp"
#include "ccc/model.hpp"
#include "ccc/planner.hpp"
#include "ccc/scalar.hpp"
