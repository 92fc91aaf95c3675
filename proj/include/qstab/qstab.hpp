#pragma once

#include "contraction.hpp"
#include "cubecomplex.hpp"
#include "curvetype.hpp"
#include "errors.hpp"
#include "io.hpp"
#include "monoid.hpp"
#include "partitions.hpp"
#include "qcond.hpp"
#include "tropical.hpp"
#include "uradius.hpp"
