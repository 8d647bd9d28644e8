#pragma once

#include "arith.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "lambda.hpp"
#include "oracle.hpp"
#include "parity.hpp"
#include "square_class.hpp"
#include "tower.hpp"
