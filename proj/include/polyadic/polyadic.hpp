#pragma once

#include "polyadic/core.hpp"
#include "polyadic/element_map.hpp"
#include "polyadic/field_matrix.hpp"
#include "polyadic/finite_group.hpp"
#include "polyadic/io.hpp"
#include "polyadic/morphisms.hpp"
#include "polyadic/parallel.hpp"
#include "polyadic/polyadic_group.hpp"
#include "polyadic/representations.hpp"
#include "polyadic/standard_groups.hpp"
