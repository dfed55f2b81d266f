#ifndef LAXFORGE_BOUNDARY_HPP
#define LAXFORGE_BOUNDARY_HPP

#include <laxforge/boundary/open.hpp>
#include <laxforge/boundary/rational_function.hpp>
#include <laxforge/boundary/reflection.hpp>

#endif
