#pragma once

#include "spacesplit/baker_map.hpp"
#include "spacesplit/map_model.hpp"
#include "spacesplit/observable.hpp"
#include "spacesplit/random.hpp"
#include "spacesplit/response.hpp"
#include "spacesplit/statistics.hpp"
#include "spacesplit/tangent_stack.hpp"
#include "spacesplit/trajectory.hpp"
#include "spacesplit/types.hpp"
#include "spacesplit/validation.hpp"
