#pragma once

// Umbrella header for the whole library.

#include "kcensus/bigint.hpp"
#include "kcensus/bracket.hpp"
#include "kcensus/braid.hpp"
#include "kcensus/census.hpp"
#include "kcensus/cusp.hpp"
#include "kcensus/diagram.hpp"
#include "kcensus/error.hpp"
#include "kcensus/homology.hpp"
#include "kcensus/laurent.hpp"
#include "kcensus/notation.hpp"
#include "kcensus/rand.hpp"
