#pragma once

#include "mspace/algebra.hpp"
#include "mspace/bohr.hpp"
#include "mspace/constants.hpp"
#include "mspace/density.hpp"
#include "mspace/dirac.hpp"
#include "mspace/geometry.hpp"
