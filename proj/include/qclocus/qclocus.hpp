#pragma once

// Umbrella header for the whole library.

#include "qclocus/cli.hpp"
#include "qclocus/curve_function.hpp"
#include "qclocus/errors.hpp"
#include "qclocus/expansion.hpp"
#include "qclocus/factor.hpp"
#include "qclocus/fp.hpp"
#include "qclocus/heights.hpp"
#include "qclocus/intops.hpp"
#include "qclocus/laurent.hpp"
#include "qclocus/locus.hpp"
#include "qclocus/nilpotent.hpp"
#include "qclocus/padic.hpp"
#include "qclocus/point.hpp"
#include "qclocus/polynomial.hpp"
#include "qclocus/radical.hpp"
#include "qclocus/rational.hpp"
#include "qclocus/reduction.hpp"
#include "qclocus/residues.hpp"
#include "qclocus/torsion.hpp"
#include "qclocus/torsor.hpp"
#include "qclocus/tower.hpp"
#include "qclocus/weierstrass.hpp"
