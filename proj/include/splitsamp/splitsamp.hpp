#pragma once

// Umbrella header for the split-sampling library.
//
// Pipeline overview:
//   plan      -- interval schemes with shifted boundaries and the working grid
//   mechanism -- provider side: split assignment + discretization
//   reconstruct -- analyst side: synthetic variable on the working grid
//   estimate  -- conditional-mean tables and the three OLS pipelines
//   privacy   -- realized epsilon/delta accounting, Laplace baseline
//   simulate  -- Monte Carlo bias harness

#include "splitsamp/distributions.hpp"
#include "splitsamp/errors.hpp"
#include "splitsamp/estimate.hpp"
#include "splitsamp/io.hpp"
#include "splitsamp/math.hpp"
#include "splitsamp/mechanism.hpp"
#include "splitsamp/plan.hpp"
#include "splitsamp/privacy.hpp"
#include "splitsamp/reconstruct.hpp"
#include "splitsamp/rng.hpp"
#include "splitsamp/simulate.hpp"
