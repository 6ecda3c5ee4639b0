#pragma once

#include "pla/adversary.hpp"
#include "pla/bits.hpp"
#include "pla/bounds.hpp"
#include "pla/detector.hpp"
#include "pla/errors.hpp"
#include "pla/harness.hpp"
#include "pla/numeric.hpp"
#include "pla/params.hpp"
#include "pla/rng.hpp"
#include "pla/tag_codec.hpp"
#include "pla/waveform.hpp"
