#pragma once

#include "mellinium/mellin_function.hpp"

namespace mellinium::corpus {

/// e^{-beta x}, strip <0, inf>.
MellinFunction exp_decay(double beta = 1.0);

/// 1 / (e^x - 1), strip <1, inf>.
MellinFunction bose();

/// 1 / (e^x + 1), strip <0, inf>.
MellinFunction fermi();

/// x^eps (log x)^k e^{-x}, strip <-eps, inf>.
MellinFunction power_log(double eps, int k);

/// exp(-pi r^2 / g) g^{-n/2}, strip <-inf, n/2>.
MellinFunction heat_kernel(int n, double distance);

/// x / (1 + x)^3, strip <-1, 2>.
MellinFunction rational_bump();

/// 1 / (1 + x), strip <0, 1>.
MellinFunction reciprocal_shift();

}  // namespace mellinium::corpus
