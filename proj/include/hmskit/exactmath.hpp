#pragma once

#include "hmskit/bipoly.hpp"
#include "hmskit/finite_field.hpp"
#include "hmskit/rational.hpp"
#include "hmskit/ratfunc.hpp"
#include "hmskit/unipoly.hpp"
