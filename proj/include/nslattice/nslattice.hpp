#pragma once

#include "nslattice/integer.hpp"
#include "nslattice/lattice.hpp"
#include "nslattice/forms.hpp"
#include "nslattice/matrix.hpp"
#include "nslattice/isometry.hpp"
#include "nslattice/cremona.hpp"
#include "nslattice/spectral.hpp"
#include "nslattice/json_io.hpp"
#include "nslattice/corpus.hpp"
