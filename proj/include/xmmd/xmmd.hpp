#pragma once

#include "xmmd/calibration.hpp"
#include "xmmd/common.hpp"
#include "xmmd/cross_mmd.hpp"
#include "xmmd/datagen.hpp"
#include "xmmd/general_ustat.hpp"
#include "xmmd/harness.hpp"
#include "xmmd/io.hpp"
#include "xmmd/kernels.hpp"
#include "xmmd/mmd.hpp"
#include "xmmd/parallel.hpp"
#include "xmmd/result.hpp"
#include "xmmd/rng.hpp"
