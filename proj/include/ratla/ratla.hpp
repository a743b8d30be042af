#pragma once

#include "affine.hpp"
#include "eigen.hpp"
#include "errors.hpp"
#include "invest.hpp"
#include "matrix.hpp"
#include "measure.hpp"
#include "render.hpp"
#include "scalar.hpp"
#include "scene.hpp"
