#pragma once

#include "gerbegw/errors.hpp"
#include "gerbegw/rational.hpp"
#include "gerbegw/modular.hpp"
#include "gerbegw/cyclotomic.hpp"
#include "gerbegw/linalg.hpp"
#include "gerbegw/finite_group.hpp"
#include "gerbegw/builtin_groups.hpp"
#include "gerbegw/abelian.hpp"
#include "gerbegw/character_table.hpp"
#include "gerbegw/cocycles.hpp"
#include "gerbegw/twisted_algebra.hpp"
#include "gerbegw/psi_integrals.hpp"
#include "gerbegw/counting.hpp"
#include "gerbegw/gw_engine.hpp"
#include "gerbegw/json_io.hpp"
