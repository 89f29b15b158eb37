#pragma once

// Umbrella header.

#include "legorbit/counting.hpp"
#include "legorbit/errors.hpp"
#include "legorbit/invariant_factors.hpp"
#include "legorbit/numeric.hpp"
#include "legorbit/orbits.hpp"
#include "legorbit/rational.hpp"
#include "legorbit/rays.hpp"
#include "legorbit/report_io.hpp"
#include "legorbit/structures.hpp"
#include "legorbit/words.hpp"
