#pragma once

#include "lexistat/analysis.hpp"
#include "lexistat/analysis_io.hpp"
#include "lexistat/distance.hpp"
#include "lexistat/error.hpp"
#include "lexistat/fixtures.hpp"
#include "lexistat/format.hpp"
#include "lexistat/matrix_io.hpp"
#include "lexistat/phylogeny.hpp"
#include "lexistat/unicode.hpp"
#include "lexistat/wordlist.hpp"
