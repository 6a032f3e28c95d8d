#pragma once

#include "transclab/gamma/bounds.hpp"
#include "transclab/gamma/certificate.hpp"
#include "transclab/gamma/gamma_value.hpp"
#include "transclab/gamma/gibbs.hpp"
#include "transclab/gamma/tensor_network.hpp"
