#ifndef TWISTLAB_TWISTLAB_HPP
#define TWISTLAB_TWISTLAB_HPP

#include <twistlab/curves.hpp>
#include <twistlab/density.hpp>
#include <twistlab/error.hpp>
#include <twistlab/fiber.hpp>
#include <twistlab/integer.hpp>
#include <twistlab/localsol.hpp>
#include <twistlab/parse.hpp>
#include <twistlab/poly.hpp>

#endif // TWISTLAB_TWISTLAB_HPP
