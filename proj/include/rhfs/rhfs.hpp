#pragma once

#include "model.hpp"
#include "decode.hpp"
#include "metrics.hpp"
#include "levy.hpp"
#include "wpa.hpp"
#include "ldwpa.hpp"
#include "instance_io.hpp"
#include "generate.hpp"
#include "params_io.hpp"
#include "experiment.hpp"
#include "schedule_io.hpp"
#include "gantt.hpp"
