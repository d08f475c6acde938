#pragma once

// convenience umbrella: everything except the CLI layer

#include "naqm/algebra.hpp"
#include "naqm/dynamics.hpp"
#include "naqm/eigen.hpp"
#include "naqm/enveloping.hpp"
#include "naqm/errors.hpp"
#include "naqm/gns.hpp"
#include "naqm/instances.hpp"
#include "naqm/io.hpp"
#include "naqm/matrix.hpp"
#include "naqm/scalar.hpp"
#include "naqm/states.hpp"
#include "naqm/trace.hpp"
