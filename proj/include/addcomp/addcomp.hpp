#pragma once

#include "addcomp/core.hpp"
#include "addcomp/primes.hpp"
#include "addcomp/intset.hpp"
#include "addcomp/sumset.hpp"
#include "addcomp/predicates.hpp"
#include "addcomp/constructions.hpp"
#include "addcomp/search.hpp"
#include "addcomp/dsl.hpp"
