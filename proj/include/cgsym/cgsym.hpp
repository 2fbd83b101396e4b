#pragma once

#include "cgsym/cupflow.hpp"
#include "cgsym/equivalence.hpp"
#include "cgsym/errors.hpp"
#include "cgsym/graph.hpp"
#include "cgsym/imset.hpp"
#include "cgsym/matrix.hpp"
#include "cgsym/numeric.hpp"
#include "cgsym/permutation.hpp"
#include "cgsym/polynomial.hpp"
#include "cgsym/rng.hpp"
#include "cgsym/symmetry.hpp"
#include "cgsym/vertex_set.hpp"
