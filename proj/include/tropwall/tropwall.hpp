#pragma once

// Umbrella header for the tropwall library: exact wall structures for
// point-constrained superpotentials on toric Fano surfaces, chamber
// potentials by broken-line enumeration, and quantum-period extraction.

#include "tropwall/errors.hpp"
#include "tropwall/nilring.hpp"
#include "tropwall/toric.hpp"
#include "tropwall/scatter.hpp"
#include "tropwall/potential.hpp"
#include "tropwall/builder.hpp"
#include "tropwall/period.hpp"
#include "tropwall/sceneio.hpp"
#include "tropwall/render.hpp"
