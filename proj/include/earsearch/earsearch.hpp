#pragma once

#include "canonical.hpp"
#include "engine.hpp"
#include "families.hpp"
#include "graph.hpp"
#include "graph6.hpp"
#include "parallel.hpp"
#include "reconstruction.hpp"
#include "saturation.hpp"
