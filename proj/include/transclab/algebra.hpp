#pragma once

#include "transclab/algebra/bigfloat.hpp"
#include "transclab/algebra/evaluate.hpp"
#include "transclab/algebra/field_context.hpp"
#include "transclab/algebra/radical_element.hpp"
#include "transclab/algebra/rank.hpp"
#include "transclab/algebra/rational_matrix.hpp"
#include "transclab/algebra/root_degree.hpp"
#include "transclab/algebra/serialize.hpp"
