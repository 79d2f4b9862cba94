#ifndef WINTERLAT_WINTERLAT_HPP
#define WINTERLAT_WINTERLAT_HPP

#include "winterlat/error.hpp"
#include "winterlat/rational.hpp"
#include "winterlat/lattice.hpp"
#include "winterlat/classifier.hpp"
#include "winterlat/configuration.hpp"
#include "winterlat/energy.hpp"
#include "winterlat/continuum.hpp"
#include "winterlat/minimizer.hpp"
#include "winterlat/convergence.hpp"
#include "winterlat/verify.hpp"
#include "winterlat/render.hpp"
#include "winterlat/runspec.hpp"

#endif  // WINTERLAT_WINTERLAT_HPP
