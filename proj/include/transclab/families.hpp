#pragma once

#include "transclab/families/certify.hpp"
#include "transclab/families/export.hpp"
#include "transclab/families/family_spec.hpp"
#include "transclab/families/numeric.hpp"
#include "transclab/families/phase_table.hpp"
