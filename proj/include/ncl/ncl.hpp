#ifndef NCL_NCL_HPP
#define NCL_NCL_HPP

#include "ncl/error.hpp"
#include "ncl/fock.hpp"
#include "ncl/ass_state.hpp"
#include "ncl/moment_table.hpp"
#include "ncl/normal_polynomial.hpp"
#include "ncl/moments.hpp"
#include "ncl/hermite_oracle.hpp"
#include "ncl/criteria.hpp"
#include "ncl/bochner.hpp"
#include "ncl/measurement.hpp"
#include "ncl/io.hpp"

#endif // NCL_NCL_HPP
