#pragma once

#include "isofield/errors.hpp"
#include "isofield/harmonics.hpp"
#include "isofield/io.hpp"
#include "isofield/ladder.hpp"
#include "isofield/quadrature.hpp"
#include "isofield/radial.hpp"
#include "isofield/random_field.hpp"
#include "isofield/rep_theory.hpp"
#include "isofield/rng.hpp"
#include "isofield/transform.hpp"
#include "isofield/wigner.hpp"
