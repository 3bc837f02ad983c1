#pragma once

// Umbrella header: dense two-projection spectral toolkit.

#include "twoproj/matrix.hpp"
#include "twoproj/eigen.hpp"
#include "twoproj/rng.hpp"
#include "twoproj/projection.hpp"
#include "twoproj/halmos.hpp"
#include "twoproj/spectral_law.hpp"
#include "twoproj/synthesis.hpp"
#include "twoproj/verification.hpp"
