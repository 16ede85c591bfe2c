#pragma once

#include "algorithms.hpp"
#include "geometry.hpp"
#include "hilbert.hpp"
#include "io.hpp"
#include "linalg.hpp"
#include "poly.hpp"
#include "random.hpp"
#include "rational.hpp"
#include "solver.hpp"
#include "tensor.hpp"
#include "univariate.hpp"
