#ifndef LINSUP_LINSUP_HPP
#define LINSUP_LINSUP_HPP

#include "version.hpp"
#include "vector_ops.hpp"
#include "random.hpp"
#include "problem.hpp"
#include "projections.hpp"
#include "proximity.hpp"
#include "superiorization.hpp"
#include "oracle.hpp"
#include "trace_io.hpp"
#include "svg_plot.hpp"
#include "experiment.hpp"

#endif // LINSUP_LINSUP_HPP
