#pragma once

#include "rainbow/combinatorics.hpp"
#include "rainbow/configuration.hpp"
#include "rainbow/depth.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/geometry.hpp"
#include "rainbow/hypergraph.hpp"
#include "rainbow/lp.hpp"
#include "rainbow/pipeline.hpp"
#include "rainbow/rational.hpp"
#include "rainbow/separation.hpp"
#include "rainbow/svg.hpp"
#include "rainbow/tverberg.hpp"
