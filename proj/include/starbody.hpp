#pragma once

#include "starbody/xreal.hpp"
#include "starbody/direction.hpp"
#include "starbody/sphere_grid.hpp"
#include "starbody/radial_profile.hpp"
#include "starbody/star_body.hpp"
#include "starbody/convex_seed.hpp"
#include "starbody/radial_metrics.hpp"
#include "starbody/euclidean_metrics.hpp"
#include "starbody/dualities.hpp"
#include "starbody/corpus.hpp"
#include "starbody/convergence.hpp"
#include "starbody/checks.hpp"
#include "starbody/io.hpp"
