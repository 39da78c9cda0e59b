#pragma once

// Special functions and exact sequences.
#include "cmkit/config.hpp"
#include "cmkit/errors.hpp"
#include "cmkit/gamma.hpp"
#include "cmkit/mills.hpp"
#include "cmkit/sequences.hpp"
#include "cmkit/theta0.hpp"
#include "cmkit/tricomi.hpp"
#include "cmkit/zeta.hpp"
