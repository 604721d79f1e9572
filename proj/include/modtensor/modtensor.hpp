#pragma once

#include "modtensor/errors.hpp"
#include "modtensor/factor.hpp"
#include "modtensor/field.hpp"
#include "modtensor/json_io.hpp"
#include "modtensor/matrix.hpp"
#include "modtensor/module.hpp"
#include "modtensor/poly.hpp"
#include "modtensor/rewrite.hpp"
#include "modtensor/smith.hpp"
#include "modtensor/tensor.hpp"
