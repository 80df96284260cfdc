#pragma once

#include "bsv/claims.hpp"
#include "bsv/coeff.hpp"
#include "bsv/content_store.hpp"
#include "bsv/errors.hpp"
#include "bsv/monomial.hpp"
#include "bsv/poly_matrix.hpp"
#include "bsv/polynomial.hpp"
#include "bsv/poset.hpp"
#include "bsv/serialize.hpp"
#include "bsv/splitting.hpp"
#include "bsv/symbolic.hpp"
