#ifndef RATWAVE_RATWAVE_HPP
#define RATWAVE_RATWAVE_HPP

#include "ratwave/daubechies.hpp"
#include "ratwave/dense.hpp"
#include "ratwave/errors.hpp"
#include "ratwave/io.hpp"
#include "ratwave/laurent.hpp"
#include "ratwave/param_maps.hpp"
#include "ratwave/rational.hpp"
#include "ratwave/rationalize.hpp"
#include "ratwave/reference_tables.hpp"
#include "ratwave/wavelet_bank.hpp"

#endif // RATWAVE_RATWAVE_HPP
