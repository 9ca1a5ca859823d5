#ifndef DQUOT_DQUOT_HPP
#define DQUOT_DQUOT_HPP

#include <dquot/derham.hpp>
#include <dquot/derivation.hpp>
#include <dquot/generators.hpp>
#include <dquot/graded_polynomial.hpp>
#include <dquot/linalg.hpp>
#include <dquot/nc_polynomial.hpp>
#include <dquot/parser.hpp>
#include <dquot/pipeline.hpp>
#include <dquot/points.hpp>
#include <dquot/repify.hpp>
#include <dquot/resolution.hpp>
#include <dquot/scalar.hpp>
#include <dquot/serialize.hpp>
#include <dquot/tangent.hpp>

#endif  // DQUOT_DQUOT_HPP
