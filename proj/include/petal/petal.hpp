#pragma once

#include "petal/alexander.hpp"
#include "petal/bracket.hpp"
#include "petal/braid.hpp"
#include "petal/error.hpp"
#include "petal/fingerprint.hpp"
#include "petal/geometric.hpp"
#include "petal/grid.hpp"
#include "petal/knot_table.hpp"
#include "petal/laurent.hpp"
#include "petal/planar_diagram.hpp"
#include "petal/search.hpp"
#include "petal/sequence.hpp"
#include "petal/sticks.hpp"
#include "petal/svg.hpp"
