#pragma once

// Umbrella header.

#include "homexp/arith.hpp"
#include "homexp/bounds.hpp"
#include "homexp/certificate.hpp"
#include "homexp/errors.hpp"
#include "homexp/exceptional.hpp"
#include "homexp/facts.hpp"
#include "homexp/format.hpp"
#include "homexp/interval.hpp"
#include "homexp/parse.hpp"
#include "homexp/space.hpp"
#include "homexp/splittings.hpp"
