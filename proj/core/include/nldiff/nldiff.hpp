#pragma once

#include "nldiff/analysis.hpp"
#include "nldiff/error.hpp"
#include "nldiff/field.hpp"
#include "nldiff/fundamental.hpp"
#include "nldiff/grid.hpp"
#include "nldiff/heat_reference.hpp"
#include "nldiff/kernel.hpp"
#include "nldiff/nonlocal_solver.hpp"
#include "nldiff/rescaling.hpp"
#include "nldiff/snapshot.hpp"
#include "nldiff/spectral.hpp"
#include "nldiff/trajectory.hpp"
