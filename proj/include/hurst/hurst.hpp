#pragma once

#include "analysis.hpp"
#include "dfa.hpp"
#include "error.hpp"
#include "exponents.hpp"
#include "psa.hpp"
#include "report.hpp"
#include "series.hpp"
#include "synth.hpp"
#include "trace_io.hpp"
#include "tsa.hpp"
