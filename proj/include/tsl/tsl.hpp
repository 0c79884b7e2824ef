#pragma once

#include "constructor.hpp"
#include "dynamics.hpp"
#include "errors.hpp"
#include "extremal.hpp"
#include "io.hpp"
#include "scalar.hpp"
#include "shifts.hpp"
#include "spaces.hpp"
#include "tree.hpp"
#include "weights.hpp"
#include "witnesses.hpp"
