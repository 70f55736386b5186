#pragma once

// Kramers problem for a quantum Bose gas with constant collision frequency:
// Neumann-series slip coefficients, spectral densities, velocity profile,
// and the exact Case-method benchmark.

#include "kramers/bose_kernel.hpp"
#include "kramers/dimensional.hpp"
#include "kramers/exact_solution.hpp"
#include "kramers/field_reconstruction.hpp"
#include "kramers/neumann.hpp"
#include "kramers/quadrature.hpp"
#include "kramers/spectral_functions.hpp"
#include "kramers/spectral_grid.hpp"
