#pragma once

#include <admlab/core/error.hpp>
#include <admlab/core/numeric.hpp>

#include <admlab/orlicz/dvp.hpp>
#include <admlab/orlicz/io.hpp>
#include <admlab/orlicz/luxemburg.hpp>
#include <admlab/orlicz/sampled_function.hpp>
#include <admlab/orlicz/young_function.hpp>

#include <admlab/spectral/generator.hpp>
#include <admlab/spectral/io.hpp>
#include <admlab/spectral/ops.hpp>
#include <admlab/spectral/vector.hpp>

#include <admlab/signals/integrals.hpp>
#include <admlab/signals/io.hpp>
#include <admlab/signals/random.hpp>
#include <admlab/signals/signal.hpp>

#include <admlab/admissibility/bounds.hpp>
#include <admlab/admissibility/input_operator.hpp>
#include <admlab/admissibility/report.hpp>

#include <admlab/certify/counterexample.hpp>
#include <admlab/certify/demos.hpp>
#include <admlab/certify/iss.hpp>
#include <admlab/certify/sqfct.hpp>
#include <admlab/certify/weiss.hpp>
