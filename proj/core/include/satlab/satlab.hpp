#pragma once

#include "satlab/bitstring.hpp"
#include "satlab/combinatorics.hpp"
#include "satlab/complexity.hpp"
#include "satlab/compressor.hpp"
#include "satlab/errors.hpp"
#include "satlab/experiments.hpp"
#include "satlab/formula.hpp"
#include "satlab/quadrature.hpp"
#include "satlab/results_io.hpp"
#include "satlab/rng.hpp"
#include "satlab/statdist.hpp"
