#pragma once

#include "hypercover/bitset.hpp"
#include "hypercover/constructions.hpp"
#include "hypercover/family.hpp"
#include "hypercover/geometry.hpp"
#include "hypercover/io.hpp"
#include "hypercover/rational.hpp"
#include "hypercover/reduction.hpp"
#include "hypercover/search/candidates.hpp"
#include "hypercover/search/search.hpp"
#include "hypercover/search/set_cover.hpp"
#include "hypercover/search/work_stealing_pool.hpp"
#include "hypercover/witness.hpp"
