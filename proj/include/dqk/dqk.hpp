#pragma once

#include "dqk/error.hpp"
#include "dqk/scalar.hpp"
#include "dqk/matrix.hpp"
#include "dqk/poly.hpp"
#include "dqk/algebra.hpp"
#include "dqk/projgeom.hpp"
#include "dqk/transforms.hpp"
#include "dqk/dyads.hpp"
#include "dqk/motions.hpp"
#include "dqk/quadreconstruct.hpp"
