#pragma once

// Umbrella header: the whole toolkit.

#include "povm/circle_set.hpp"
#include "povm/eigen.hpp"
#include "povm/errors.hpp"
#include "povm/gram.hpp"
#include "povm/hermitian.hpp"
#include "povm/indexing.hpp"
#include "povm/line_povm.hpp"
#include "povm/matrix.hpp"
#include "povm/moments.hpp"
#include "povm/oracle.hpp"
#include "povm/phase_povm.hpp"
#include "povm/quadrature.hpp"
#include "povm/real_set.hpp"
#include "povm/rng.hpp"
#include "povm/serialize.hpp"
#include "povm/spectral.hpp"
#include "povm/version.hpp"
