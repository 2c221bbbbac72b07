// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "angles.hpp"
#include "bell.hpp"
#include "circuit.hpp"
#include "classical.hpp"
#include "errors.hpp"
#include "expr.hpp"
#include "game.hpp"
#include "histogram.hpp"
#include "optimize.hpp"
#include "quantum.hpp"
#include "reference.hpp"
#include "search.hpp"
#include "truth_table.hpp"
#include "verify.hpp"
