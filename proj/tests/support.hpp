#pragma once

#include "germcalc/sampling.hpp"

namespace germcalc::testing {

using Sampler = germcalc::SeriesSampler;

} // namespace germcalc::testing
