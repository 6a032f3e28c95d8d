#pragma once

#include "transclab/hardness/closed_form.hpp"
#include "transclab/hardness/monte_carlo.hpp"
