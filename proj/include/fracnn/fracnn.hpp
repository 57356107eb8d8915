#pragma once

// Convenience umbrella: the whole solver in one include.

#include "fracnn/caputo.hpp"
#include "fracnn/grid.hpp"
#include "fracnn/io.hpp"
#include "fracnn/models.hpp"
#include "fracnn/network.hpp"
#include "fracnn/problem.hpp"
#include "fracnn/reference.hpp"
#include "fracnn/run.hpp"
#include "fracnn/special_functions.hpp"
#include "fracnn/training.hpp"
