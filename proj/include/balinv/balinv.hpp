#pragma once

// Umbrella header: structured approximate inverses of balanced symmetric
// matrices, certified error bounds, the dense oracle, conjugate-gradient
// preconditioning, and degree-sequence model fitting.

#include "balinv/approx_inverse.hpp"
#include "balinv/bench.hpp"
#include "balinv/beta_model.hpp"
#include "balinv/dense_matrix.hpp"
#include "balinv/io.hpp"
#include "balinv/matrix.hpp"
#include "balinv/oracle.hpp"
#include "balinv/pcg.hpp"
#include "balinv/rng.hpp"
