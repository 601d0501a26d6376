#pragma once

#include "coeff_poly.hpp"
#include "fgl.hpp"
#include "localize.hpp"
#include "pontclass.hpp"
#include "quotient.hpp"
#include "rational.hpp"
#include "report.hpp"
#include "series.hpp"
