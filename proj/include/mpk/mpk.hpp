#pragma once

// Umbrella header.
#include "error.hpp"
#include "gaussian_rational.hpp"
#include "kreinlanger.hpp"
#include "linalg.hpp"
#include "matpoly.hpp"
#include "odesolve.hpp"
#include "poly.hpp"
#include "ratfun.hpp"
#include "roots.hpp"
#include "smith.hpp"
#include "spectral.hpp"
