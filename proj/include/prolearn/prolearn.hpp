#pragma once

// Umbrella header: the whole library in one include.

#include "prolearn/errors.hpp"
#include "prolearn/matrix.hpp"
#include "prolearn/random.hpp"
#include "prolearn/projection.hpp"
#include "prolearn/elm.hpp"
#include "prolearn/oselm.hpp"
#include "prolearn/progressive.hpp"
#include "prolearn/dataset.hpp"
#include "prolearn/schedule.hpp"
#include "prolearn/experiment.hpp"
#include "prolearn/report.hpp"
