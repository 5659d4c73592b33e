#pragma once

#include "mqt/field.hpp"
#include "mqt/linalg.hpp"
#include "mqt/states.hpp"
#include "mqt/enumerate.hpp"
#include "mqt/bipartite.hpp"
#include "mqt/channels.hpp"
#include "mqt/tables.hpp"
#include "mqt/fixtures.hpp"
#include "mqt/rational.hpp"
#include "mqt/lp.hpp"
#include "mqt/resolve.hpp"
#include "mqt/classify.hpp"
#include "mqt/hvgames.hpp"
#include "mqt/random.hpp"
