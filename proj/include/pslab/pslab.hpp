#pragma once

#include "pslab/config.hpp"
#include "pslab/csv.hpp"
#include "pslab/distribution.hpp"
#include "pslab/fixtures.hpp"
#include "pslab/harness.hpp"
#include "pslab/op_counter.hpp"
#include "pslab/random.hpp"
#include "pslab/reproduce.hpp"
#include "pslab/sort.hpp"
#include "pslab/stats/anova.hpp"
#include "pslab/stats/fdist.hpp"
#include "pslab/stats/regression.hpp"
