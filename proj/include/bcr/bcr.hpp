#pragma once

#include "bcr/rational.hpp"
#include "bcr/lattice.hpp"
#include "bcr/messages.hpp"
#include "bcr/regions.hpp"
#include "bcr/projection.hpp"
#include "bcr/combnet.hpp"
#include "bcr/verify.hpp"
#include "bcr/report.hpp"
