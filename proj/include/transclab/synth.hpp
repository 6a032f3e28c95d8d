#pragma once

#include "transclab/synth/circuit.hpp"
#include "transclab/synth/gate_set.hpp"
#include "transclab/synth/search.hpp"
