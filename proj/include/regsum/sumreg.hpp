#pragma once

#include "regsum/sumreg/limits.hpp"
#include "regsum/sumreg/oracles.hpp"
#include "regsum/sumreg/sequence.hpp"
#include "regsum/sumreg/telescoper.hpp"
