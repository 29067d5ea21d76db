#pragma once

// Umbrella header: exact Jordan-totient quotients and θ-totients, cyclotomic
// derivative identities, Euler-product constants, and the summatory
// verification lab.

#include "jtq/numeric.hpp"
#include "jtq/sieve.hpp"
#include "jtq/factored.hpp"
#include "jtq/exponent.hpp"
#include "jtq/jordan.hpp"
#include "jtq/series.hpp"
#include "jtq/theta.hpp"
#include "jtq/combinatorics.hpp"
#include "jtq/cyclotomic.hpp"
#include "jtq/lehmer.hpp"
#include "jtq/precision.hpp"
#include "jtq/zeta.hpp"
#include "jtq/constants.hpp"
#include "jtq/summatory.hpp"
#include "jtq/logfit.hpp"
#include "jtq/verify.hpp"
#include "jtq/report_io.hpp"
