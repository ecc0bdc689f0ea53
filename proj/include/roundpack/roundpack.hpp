#pragma once

#include "roundpack/error.hpp"
#include "roundpack/core.hpp"
#include "roundpack/io.hpp"
#include "roundpack/random.hpp"
#include "roundpack/guards.hpp"
#include "roundpack/dsa.hpp"
#include "roundpack/flow.hpp"
#include "roundpack/unitpack.hpp"
#include "roundpack/oracle.hpp"
#include "roundpack/uniform.hpp"
#include "roundpack/nba.hpp"
#include "roundpack/general.hpp"
#include "roundpack/tree.hpp"
#include "roundpack/hardness.hpp"
