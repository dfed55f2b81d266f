#ifndef LAXFORGE_HIERARCHY_HPP
#define LAXFORGE_HIERARCHY_HPP

#include <laxforge/hierarchy/cache.hpp>
#include <laxforge/hierarchy/charges.hpp>
#include <laxforge/hierarchy/dressing.hpp>
#include <laxforge/hierarchy/eom.hpp>
#include <laxforge/hierarchy/generate.hpp>
#include <laxforge/hierarchy/lax.hpp>

#endif
