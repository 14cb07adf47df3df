#ifndef COMMOP_HPP
#define COMMOP_HPP

// Umbrella header: exact construction, discovery, and certification of
// commuting ordinary differential operators with polynomial coefficients.

#include "commop/rational.hpp"
#include "commop/polynomial.hpp"
#include "commop/operator.hpp"
#include "commop/chebyshev.hpp"
#include "commop/families.hpp"
#include "commop/linalg.hpp"
#include "commop/centralizer.hpp"
#include "commop/spectral.hpp"
#include "commop/selfadjoint.hpp"
#include "commop/eigenspace.hpp"

#endif
