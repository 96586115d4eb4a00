#pragma once

#include "wcg/errors.hpp"
#include "wcg/model.hpp"
#include "wcg/game_json.hpp"
#include "wcg/numerics.hpp"
#include "wcg/faulhaber.hpp"
#include "wcg/profile_space.hpp"
#include "wcg/generators.hpp"
#include "wcg/network.hpp"
#include "wcg/equilibria.hpp"
#include "wcg/potential.hpp"
