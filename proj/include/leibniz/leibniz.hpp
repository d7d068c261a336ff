#pragma once

#include "leibniz/algebra.hpp"
#include "leibniz/catalog.hpp"
#include "leibniz/derivations.hpp"
#include "leibniz/errors.hpp"
#include "leibniz/extensions.hpp"
#include "leibniz/invariants.hpp"
#include "leibniz/json_io.hpp"
#include "leibniz/matrix.hpp"
#include "leibniz/poly.hpp"
#include "leibniz/random.hpp"
#include "leibniz/scalar.hpp"
#include "leibniz/tensor.hpp"
