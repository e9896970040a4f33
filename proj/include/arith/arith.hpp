#pragma once

#include "arith/asymptotic.hpp"
#include "arith/checkpoint.hpp"
#include "arith/chebyshev.hpp"
#include "arith/diagnostics.hpp"
#include "arith/errors.hpp"
#include "arith/inequality.hpp"
#include "arith/log_magnitude.hpp"
#include "arith/mertens.hpp"
#include "arith/sieve.hpp"
