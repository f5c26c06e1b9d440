#pragma once

#include "boxlike/dimension.hpp"
#include "boxlike/error.hpp"
#include "boxlike/gpmat.hpp"
#include "boxlike/lift.hpp"
#include "boxlike/matrix.hpp"
#include "boxlike/model_io.hpp"
#include "boxlike/oracle.hpp"
#include "boxlike/pressure.hpp"
#include "boxlike/render.hpp"
