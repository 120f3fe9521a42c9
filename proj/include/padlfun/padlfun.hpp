#ifndef PADLFUN_PADLFUN_HPP
#define PADLFUN_PADLFUN_HPP

#include "padlfun/errors.hpp"
#include "padlfun/arith.hpp"
#include "padlfun/padic.hpp"
#include "padlfun/series.hpp"
#include "padlfun/measures.hpp"
#include "padlfun/pseudomeasure.hpp"
#include "padlfun/eisenstein.hpp"
#include "padlfun/mass.hpp"
#include "padlfun/tables.hpp"

#endif
