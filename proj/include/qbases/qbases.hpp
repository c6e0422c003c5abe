#pragma once

#include "qbases/scalar.hpp"
#include "qbases/matrix.hpp"
#include "qbases/repmod.hpp"
#include "qbases/basis_map.hpp"
#include "qbases/convergence.hpp"
#include "qbases/coalgebra.hpp"
#include "qbases/ncpoly.hpp"
#include "qbases/series.hpp"
#include "qbases/verify.hpp"
