#pragma once

// Umbrella header: leveled BFV-style scheme with negacyclic NTT arithmetic,
// slot batching, basis-driven ciphertext synthesis, exact noise metering,
// and artifact persistence.

#include "syfh/batching.hpp"
#include "syfh/context.hpp"
#include "syfh/counters.hpp"
#include "syfh/errors.hpp"
#include "syfh/fhe.hpp"
#include "syfh/harness.hpp"
#include "syfh/modmath.hpp"
#include "syfh/noise.hpp"
#include "syfh/ntt.hpp"
#include "syfh/params.hpp"
#include "syfh/poly.hpp"
#include "syfh/rng.hpp"
#include "syfh/serialize.hpp"
#include "syfh/synthesis.hpp"
