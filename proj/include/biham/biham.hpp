#pragma once

// Umbrella header.

#include "biham/classification.hpp"
#include "biham/cohomology.hpp"
#include "biham/errors.hpp"
#include "biham/flow.hpp"
#include "biham/functionals.hpp"
#include "biham/grid_function.hpp"
#include "biham/hierarchy.hpp"
#include "biham/operators.hpp"
#include "biham/serialization.hpp"
#include "biham/verify.hpp"
