#pragma once

#include "nilcurv/errors.hpp"
#include "nilcurv/rational.hpp"
#include "nilcurv/combinatorics.hpp"
#include "nilcurv/random.hpp"
#include "nilcurv/matrix.hpp"
#include "nilcurv/nilmat.hpp"
#include "nilcurv/orbit.hpp"
#include "nilcurv/hodge.hpp"
#include "nilcurv/io.hpp"
