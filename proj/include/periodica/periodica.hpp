#ifndef PERIODICA_PERIODICA_HPP
#define PERIODICA_PERIODICA_HPP

#include "periodica/accumulator.hpp"
#include "periodica/classtag.hpp"
#include "periodica/creal.hpp"
#include "periodica/exact.hpp"
#include "periodica/expansions.hpp"
#include "periodica/fseq.hpp"
#include "periodica/interval.hpp"
#include "periodica/mpoly.hpp"
#include "periodica/polyroot.hpp"
#include "periodica/semialg.hpp"
#include "periodica/series.hpp"
#include "periodica/term.hpp"
#include "periodica/term_catalog.hpp"
#include "periodica/term_parse.hpp"

#endif  // PERIODICA_PERIODICA_HPP
