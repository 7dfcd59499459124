// SPDX-License-Identifier: Apache-2.0
#ifndef FINGER_FINGER_HPP
#define FINGER_FINGER_HPP

#include "finger/config.hpp"
#include "finger/constants.hpp"
#include "finger/dipole_record.hpp"
#include "finger/errors.hpp"
#include "finger/export.hpp"
#include "finger/fingerprint.hpp"
#include "finger/geometry.hpp"
#include "finger/grid.hpp"
#include "finger/lineshape.hpp"
#include "finger/match.hpp"
#include "finger/phonons.hpp"
#include "finger/photophysics.hpp"
#include "finger/vibronic.hpp"

#endif
