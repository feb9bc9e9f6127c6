#ifndef TOYQFT_TOYQFT_HPP
#define TOYQFT_TOYQFT_HPP

#include "toyqft/error.hpp"
#include "toyqft/fock.hpp"
#include "toyqft/ladder.hpp"
#include "toyqft/fields.hpp"
#include "toyqft/spectral.hpp"
#include "toyqft/spacetime.hpp"
#include "toyqft/scatter.hpp"
#include "toyqft/verify.hpp"

#endif  // TOYQFT_TOYQFT_HPP
