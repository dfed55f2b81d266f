#ifndef LAXFORGE_ORACLE_HPP
#define LAXFORGE_ORACLE_HPP

#include <laxforge/oracle/checks.hpp>
#include <laxforge/oracle/eval.hpp>
#include <laxforge/oracle/sample.hpp>

#endif
