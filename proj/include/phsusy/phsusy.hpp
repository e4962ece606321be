#pragma once

// Umbrella header for the full toolkit: the two-level model and its spectrum,
// the positive-definite metric and Hermitian equivalent, phermionic ladder
// operators and their dual pair, the graded (Grassmann) layer, the truncated
// supersymmetric Fock construction, supercoherent state families, and the
// reporting / configuration / suite-runner utilities.

#include "phsusy/config.hpp"
#include "phsusy/errors.hpp"
#include "phsusy/fock.hpp"
#include "phsusy/grassmann.hpp"
#include "phsusy/hermitian.hpp"
#include "phsusy/linalg.hpp"
#include "phsusy/metric.hpp"
#include "phsusy/model.hpp"
#include "phsusy/phermion.hpp"
#include "phsusy/report.hpp"
#include "phsusy/scs.hpp"
#include "phsusy/suites.hpp"
