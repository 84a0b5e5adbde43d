#pragma once

// Umbrella header for the library. The CLI front end lives in
// critval/cli.hpp and is included separately by the binaries that
// need it.

#include "calculus.hpp"
#include "critical_map.hpp"
#include "dyson.hpp"
#include "format.hpp"
#include "monomial.hpp"
#include "multi_index.hpp"
#include "multipoly.hpp"
#include "numeric.hpp"
#include "polymatrix.hpp"
#include "rational.hpp"
#include "stratify.hpp"
#include "unipoly.hpp"
