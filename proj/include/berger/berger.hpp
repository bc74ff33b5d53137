#pragma once

#include "berger/core.hpp"
#include "berger/embedding.hpp"
#include "berger/errors.hpp"
#include "berger/format.hpp"
#include "berger/isoperimetric.hpp"
#include "berger/meridian.hpp"
#include "berger/quadrature.hpp"
#include "berger/regions.hpp"
#include "berger/roots.hpp"
#include "berger/sphere.hpp"
#include "berger/stability.hpp"
#include "berger/sturm.hpp"
#include "berger/torus.hpp"
