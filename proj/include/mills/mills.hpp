#pragma once

#include "mills/rational.hpp"
#include "mills/enclosure.hpp"
#include "mills/constants.hpp"
#include "mills/const_expr.hpp"
#include "mills/polynomial.hpp"
#include "mills/sturm.hpp"
#include "mills/mills_core.hpp"
#include "mills/oracle.hpp"
#include "mills/bounds.hpp"
#include "mills/verifier.hpp"
#include "mills/claim_io.hpp"
