#pragma once

#include "netdecomp/bfs.hpp"
#include "netdecomp/decomposition.hpp"
#include "netdecomp/diameter_refine.hpp"
#include "netdecomp/generators.hpp"
#include "netdecomp/graph.hpp"
#include "netdecomp/ledger.hpp"
#include "netdecomp/parallel.hpp"
#include "netdecomp/rng.hpp"
#include "netdecomp/strong_carving.hpp"
#include "netdecomp/verify.hpp"
#include "netdecomp/weak_carving.hpp"
