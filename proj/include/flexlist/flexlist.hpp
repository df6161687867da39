#pragma once

#include "flexlist/coloring.hpp"
#include "flexlist/error.hpp"
#include "flexlist/flexibility.hpp"
#include "flexlist/gadget.hpp"
#include "flexlist/graph.hpp"
#include "flexlist/instance_io.hpp"
#include "flexlist/maxflow.hpp"
#include "flexlist/nullstellensatz.hpp"
#include "flexlist/rational.hpp"
#include "flexlist/rng.hpp"
#include "flexlist/sampler.hpp"
#include "flexlist/simplex.hpp"
#include "flexlist/structure.hpp"
