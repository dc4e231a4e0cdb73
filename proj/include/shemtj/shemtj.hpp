#pragma once

#include "shemtj/constants.hpp"
#include "shemtj/demag.hpp"
#include "shemtj/device.hpp"
#include "shemtj/fields.hpp"
#include "shemtj/io.hpp"
#include "shemtj/ising.hpp"
#include "shemtj/llg.hpp"
#include "shemtj/magnetics.hpp"
#include "shemtj/parallel.hpp"
#include "shemtj/problems.hpp"
#include "shemtj/rng.hpp"
#include "shemtj/switch_curve.hpp"
#include "shemtj/switching.hpp"
#include "shemtj/vec3.hpp"
