#include <catch2/catch_amalgamated.hpp>
#include "periodica/periodica.hpp"
