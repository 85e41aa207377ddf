#pragma once

#include "catalog.hpp"
#include "catalog_io.hpp"
#include "config.hpp"
#include "golden.hpp"
#include "homology.hpp"
#include "invariants.hpp"
#include "meyer.hpp"
#include "rewrite.hpp"
#include "word.hpp"
