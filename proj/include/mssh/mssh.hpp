#pragma once

#include "mssh/bands.hpp"
#include "mssh/config.hpp"
#include "mssh/diamond.hpp"
#include "mssh/errors.hpp"
#include "mssh/lattice.hpp"
#include "mssh/multiport.hpp"
#include "mssh/output.hpp"
#include "mssh/repro.hpp"
#include "mssh/walk.hpp"
