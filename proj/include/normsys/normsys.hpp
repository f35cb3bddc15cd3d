#pragma once

// Umbrella header: the whole library in one include.

#include "normsys/errors.hpp"
#include "normsys/rng.hpp"
#include "normsys/fq.hpp"
#include "normsys/fq_matrix.hpp"
#include "normsys/linear_system.hpp"
#include "normsys/group.hpp"
#include "normsys/function_on_g.hpp"
#include "normsys/density.hpp"
#include "normsys/linsys_ops.hpp"
#include "normsys/checks.hpp"
#include "normsys/cayley.hpp"
#include "normsys/builtin.hpp"
#include "normsys/report.hpp"
