#pragma once

#include "regsum/binomial_endpoint.hpp"
#include "regsum/exactnum.hpp"
#include "regsum/expr.hpp"
#include "regsum/hyperseries.hpp"
#include "regsum/sumreg.hpp"
#include "regsum/zline.hpp"
