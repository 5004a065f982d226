#pragma once

// Umbrella header for the core library (CLI and experiment drivers are
// separate includes).
#include "monowage/allocation.hpp"
#include "monowage/blocking.hpp"
#include "monowage/choice.hpp"
#include "monowage/equilibrium.hpp"
#include "monowage/index_set.hpp"
#include "monowage/market.hpp"
#include "monowage/menu.hpp"
#include "monowage/numeric.hpp"
#include "monowage/oracle.hpp"
#include "monowage/payoff.hpp"
