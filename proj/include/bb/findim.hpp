#pragma once

#include "bb/findim/entropy.hpp"
#include "bb/findim/random.hpp"
#include "bb/findim/squash.hpp"
#include "bb/findim/state.hpp"
