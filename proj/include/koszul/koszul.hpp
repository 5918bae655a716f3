#pragma once

#include "assemble.hpp"
#include "combinat.hpp"
#include "corona.hpp"
#include "detk.hpp"
#include "estimates.hpp"
#include "exterior.hpp"
#include "opdet.hpp"
#include "poly.hpp"
