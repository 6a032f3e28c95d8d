#pragma once

#include "transclab/equidist/stats.hpp"
#include "transclab/equidist/weyl.hpp"
