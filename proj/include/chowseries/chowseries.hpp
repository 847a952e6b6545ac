#ifndef CHOWSERIES_CHOWSERIES_HPP
#define CHOWSERIES_CHOWSERIES_HPP

#include <chowseries/bigint.hpp>
#include <chowseries/chow_generators.hpp>
#include <chowseries/exponent_function.hpp>
#include <chowseries/graded_series.hpp>
#include <chowseries/laurent_poly.hpp>
#include <chowseries/motive.hpp>
#include <chowseries/rationality.hpp>
#include <chowseries/recurrence.hpp>

#endif // CHOWSERIES_CHOWSERIES_HPP
