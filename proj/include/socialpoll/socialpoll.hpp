#pragma once

// Everything except the command-line front end (socialpoll/cli.hpp).

#include "socialpoll/errors.hpp"
#include "socialpoll/graph.hpp"
#include "socialpoll/model.hpp"
#include "socialpoll/tree_decomposition.hpp"
#include "socialpoll/orientations.hpp"
#include "socialpoll/oracle.hpp"
#include "socialpoll/dp.hpp"
#include "socialpoll/reductions.hpp"
#include "socialpoll/instance_io.hpp"
