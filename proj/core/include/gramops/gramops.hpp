#ifndef GRAMOPS_GRAMOPS_HPP
#define GRAMOPS_GRAMOPS_HPP

#include "gramops/algebra.hpp"
#include "gramops/casefile.hpp"
#include "gramops/decomp.hpp"
#include "gramops/dense.hpp"
#include "gramops/errors.hpp"
#include "gramops/module.hpp"
#include "gramops/operators.hpp"
#include "gramops/random.hpp"
#include "gramops/runner.hpp"
#include "gramops/volterra.hpp"

#endif
