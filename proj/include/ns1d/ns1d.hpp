#pragma once

#include "ns1d/calculus.hpp"
#include "ns1d/cli.hpp"
#include "ns1d/config.hpp"
#include "ns1d/core.hpp"
#include "ns1d/experiments.hpp"
#include "ns1d/functionals.hpp"
#include "ns1d/io.hpp"
#include "ns1d/mms.hpp"
#include "ns1d/model.hpp"
#include "ns1d/outcome.hpp"
#include "ns1d/run.hpp"
#include "ns1d/solver.hpp"
