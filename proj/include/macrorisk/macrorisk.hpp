#pragma once

#include "csv.hpp"
#include "diagnostics.hpp"
#include "distributions.hpp"
#include "errors.hpp"
#include "ols.hpp"
#include "pipeline.hpp"
#include "report.hpp"
#include "series.hpp"
#include "stepwise.hpp"
#include "unitroot.hpp"
