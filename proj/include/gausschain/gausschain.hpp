#pragma once

#include "gausschain/chain_model.hpp"
#include "gausschain/decomposition.hpp"
#include "gausschain/entanglement.hpp"
#include "gausschain/evolution_oracle.hpp"
#include "gausschain/matrix_exponential.hpp"
#include "gausschain/protocols.hpp"
#include "gausschain/symplectic.hpp"
