#pragma once

#include "tpgrass/errors.hpp"
#include "tpgrass/flow.hpp"
#include "tpgrass/index_set.hpp"
#include "tpgrass/matrix.hpp"
#include "tpgrass/matrix_io.hpp"
#include "tpgrass/membership.hpp"
#include "tpgrass/plucker.hpp"
#include "tpgrass/samplers.hpp"
#include "tpgrass/scalar.hpp"
#include "tpgrass/subspace.hpp"
#include "tpgrass/verify.hpp"
