#pragma once

#include "tolerance.hpp"
#include "complex.hpp"
#include "persistence.hpp"
#include "bottleneck.hpp"
#include "curves2d.hpp"
#include "maxdist2d.hpp"
#include "integral2d.hpp"
#include "oracle.hpp"
#include "sphere3d.hpp"
