#pragma once

#include "qcanon/canonical.hpp"
#include "qcanon/families.hpp"
#include "qcanon/json_io.hpp"
#include "qcanon/matrix.hpp"
#include "qcanon/module.hpp"
#include "qcanon/psi.hpp"
#include "qcanon/qcomb.hpp"
#include "qcanon/tensor.hpp"
#include "qcanon/udot.hpp"
#include "qcanon/verify.hpp"
