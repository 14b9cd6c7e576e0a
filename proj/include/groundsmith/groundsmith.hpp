#pragma once

#include "groundsmith/contextual_query.hpp"
#include "groundsmith/corpus.hpp"
#include "groundsmith/error.hpp"
#include "groundsmith/frontend.hpp"
#include "groundsmith/grounding.hpp"
#include "groundsmith/ltl.hpp"
#include "groundsmith/planner.hpp"
#include "groundsmith/service.hpp"
#include "groundsmith/templates.hpp"
#include "groundsmith/toy_world.hpp"
