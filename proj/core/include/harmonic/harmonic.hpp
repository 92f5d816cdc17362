#pragma once

#include "harmonic/bounds.hpp"
#include "harmonic/classcheck.hpp"
#include "harmonic/complexfn.hpp"
#include "harmonic/error.hpp"
#include "harmonic/mappings.hpp"
#include "harmonic/power_series.hpp"
#include "harmonic/quadrature.hpp"
#include "harmonic/render.hpp"
#include "harmonic/report.hpp"
#include "harmonic/univalence.hpp"
