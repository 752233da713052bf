#pragma once

// Constants frozen from the first verified run. They pin deterministic
// outputs so that later changes in the numerics are caught, not absorbed.

namespace regression {

// Lozi (a, b) = (1.8, 0.3): manifold parameters of the first four turning
// points, outward rank order 0, -1, 1, -2.
inline constexpr double kLoziTurn[4] = {
    -0.40468898171045031,
    2.2088319235897274,
    -3.1775450243848562,
    4.1983250835626933,
};

// Lozi (1.8, 0.3): diameter of the plane region matching the stored all-Plus
// window of radius 14.
inline constexpr double kAllPlusDiameterR14 = 0.00010136235277608437;

// First differing folding coordinate between Lozi (1.8, 0.3) and (1.7, 0.35)
// at 6 generations, outward scan order.
inline constexpr int kFoldingDifferCoordinate = 10;

}  // namespace regression
