#pragma once

#include "qmonty/algebra.hpp"
#include "qmonty/closed_forms.hpp"
#include "qmonty/error.hpp"
#include "qmonty/game.hpp"
#include "qmonty/noise.hpp"
#include "qmonty/scan.hpp"
#include "qmonty/strategies.hpp"
#include "qmonty/sweep.hpp"
