#pragma once

#include "hosp/common.hpp"
#include "hosp/complex.hpp"
#include "hosp/delaunay.hpp"
#include "hosp/flow.hpp"
#include "hosp/hg_learn.hpp"
#include "hosp/hodge.hpp"
#include "hosp/hypergraph.hpp"
#include "hosp/linalg.hpp"
#include "hosp/rng.hpp"
#include "hosp/snn.hpp"
#include "hosp/spectral.hpp"
#include "hosp/tensor.hpp"
