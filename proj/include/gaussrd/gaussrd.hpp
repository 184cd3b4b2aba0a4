#pragma once

#include "gaussrd/channel.hpp"
#include "gaussrd/coherent_info.hpp"
#include "gaussrd/csv.hpp"
#include "gaussrd/distortion.hpp"
#include "gaussrd/figure.hpp"
#include "gaussrd/rate_distortion.hpp"
#include "gaussrd/rng.hpp"
#include "gaussrd/state_spec.hpp"
#include "gaussrd/symplectic.hpp"
