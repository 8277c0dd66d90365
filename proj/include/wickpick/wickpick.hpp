#ifndef WICKPICK_WICKPICK_HPP
#define WICKPICK_WICKPICK_HPP

#include <wickpick/error.hpp>
#include <wickpick/multi_index.hpp>
#include <wickpick/ring_element.hpp>
#include <wickpick/vage.hpp>
#include <wickpick/ring_matrix.hpp>
#include <wickpick/ring_poly.hpp>
#include <wickpick/rational.hpp>
#include <wickpick/interpolation.hpp>

#endif /* WICKPICK_WICKPICK_HPP */
