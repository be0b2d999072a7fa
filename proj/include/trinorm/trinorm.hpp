#pragma once

// Umbrella header: spectral/nuclear norm estimation, bounds, and oracles for
// real third-order tensors.

#include "trinorm/bounds.hpp"
#include "trinorm/check.hpp"
#include "trinorm/config.hpp"
#include "trinorm/eig.hpp"
#include "trinorm/experiment.hpp"
#include "trinorm/io.hpp"
#include "trinorm/msolve.hpp"
#include "trinorm/oracle.hpp"
#include "trinorm/rng.hpp"
#include "trinorm/tensor.hpp"
#include "trinorm/vec.hpp"
