#pragma once

#include "drms/algebra.hpp"
#include "drms/config.hpp"
#include "drms/errors.hpp"
#include "drms/expr.hpp"
#include "drms/mesh_io.hpp"
#include "drms/spaces.hpp"
#include "drms/synthesis.hpp"
#include "drms/verify.hpp"
#include "drms/weierstrass.hpp"
