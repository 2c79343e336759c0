#pragma once

#include "nrt/codetools.hpp"
#include "nrt/error.hpp"
#include "nrt/field.hpp"
#include "nrt/io.hpp"
#include "nrt/matrix.hpp"
#include "nrt/metric.hpp"
#include "nrt/reduction.hpp"
#include "nrt/symmetry.hpp"
