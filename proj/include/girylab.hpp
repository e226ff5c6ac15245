#pragma once

#include "girylab/codensity.hpp"
#include "girylab/counterexample.hpp"
#include "girylab/duality.hpp"
#include "girylab/error.hpp"
#include "girylab/giry.hpp"
#include "girylab/harness.hpp"
#include "girylab/io.hpp"
#include "girylab/measure.hpp"
#include "girylab/random.hpp"
#include "girylab/rational.hpp"
#include "girylab/sigma.hpp"
#include "girylab/verdict.hpp"
