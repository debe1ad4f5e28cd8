#pragma once

// Convenience include of the full library.

#include "eil/bounds.hpp"
#include "eil/config.hpp"
#include "eil/designs.hpp"
#include "eil/errors.hpp"
#include "eil/exact.hpp"
#include "eil/float_lu.hpp"
#include "eil/io.hpp"
#include "eil/matrix.hpp"
#include "eil/parallel.hpp"
#include "eil/proof.hpp"
#include "eil/rational.hpp"
#include "eil/rng.hpp"
#include "eil/search.hpp"
