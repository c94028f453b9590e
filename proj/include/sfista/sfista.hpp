#pragma once

#include "sfista/bounds.hpp"
#include "sfista/certificates.hpp"
#include "sfista/classic.hpp"
#include "sfista/criteria.hpp"
#include "sfista/engine.hpp"
#include "sfista/errors.hpp"
#include "sfista/extended_real.hpp"
#include "sfista/instances.hpp"
#include "sfista/lower_model.hpp"
#include "sfista/problem.hpp"
#include "sfista/prox.hpp"
#include "sfista/reference.hpp"
#include "sfista/rng.hpp"
#include "sfista/state.hpp"
#include "sfista/stopping.hpp"
#include "sfista/trace.hpp"
#include "sfista/verify.hpp"
