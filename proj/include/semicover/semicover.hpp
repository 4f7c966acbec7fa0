#pragma once

#include "semicover/core.hpp"
#include "semicover/delta.hpp"
#include "semicover/enumeration.hpp"
#include "semicover/io.hpp"
#include "semicover/report.hpp"
#include "semicover/search.hpp"
#include "semicover/structure.hpp"
#include "semicover/theorems.hpp"
