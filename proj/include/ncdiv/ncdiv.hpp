// Umbrella header.

#ifndef NCDIV_NCDIV_HPP
#define NCDIV_NCDIV_HPP

#include "ncdiv/exact_linalg.hpp"
#include "ncdiv/linear_combination.hpp"
#include "ncdiv/tensor_algebra.hpp"
#include "ncdiv/cyclic_words.hpp"
#include "ncdiv/derivation_algebra.hpp"
#include "ncdiv/divergence.hpp"
#include "ncdiv/random.hpp"
#include "ncdiv/cocycle_solver.hpp"
#include "ncdiv/symplectic_lie.hpp"
#include "ncdiv/report.hpp"

#endif // NCDIV_NCDIV_HPP
