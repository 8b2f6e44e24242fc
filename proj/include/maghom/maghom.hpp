#pragma once

#include "maghom/ai_complex.hpp"
#include "maghom/chain_complex.hpp"
#include "maghom/discrete_morse.hpp"
#include "maghom/error.hpp"
#include "maghom/graph.hpp"
#include "maghom/integer.hpp"
#include "maghom/mag_homology.hpp"
#include "maghom/magnitude.hpp"
#include "maghom/matching_builder.hpp"
#include "maghom/parallel.hpp"
#include "maghom/polynomial.hpp"
#include "maghom/s_structure.hpp"
#include "maghom/smith.hpp"
