#pragma once

#include "xizeros/defaults.hpp"
#include "xizeros/dirichlet.hpp"
#include "xizeros/io.hpp"
#include "xizeros/numerics.hpp"
#include "xizeros/profiles.hpp"
#include "xizeros/theorems.hpp"
#include "xizeros/winding.hpp"
#include "xizeros/xi_functions.hpp"
#include "xizeros/zerocount.hpp"
