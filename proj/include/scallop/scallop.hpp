#pragma once

#include "scallop/certify.hpp"
#include "scallop/instances.hpp"
#include "scallop/svg.hpp"
#include "scallop/turan_geometry.hpp"
