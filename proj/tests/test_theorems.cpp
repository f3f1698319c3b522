#include <catch2/catch_amalgamated.hpp>

#include "xizeros/xizeros.hpp"
