#pragma once

// Hard-coded to 20 significant digits.
namespace charsum::constants {

inline constexpr double pi = 3.14159265358979323846;
/// Euler's constant, lim (H_n - log n).
inline constexpr double euler_gamma = 0.57721566490153286061;
/// exp(gamma) = lim prod_{p<=y} (1-1/p)^{-1} / log y (Mertens).
inline constexpr double exp_gamma = 1.7810724179901979852;
inline constexpr double exp_minus_gamma = 0.56145948356688516982;
/// log 2 = sum_{k>=1} 1/(k 2^k).
inline constexpr double ln2 = 0.69314718055994530942;
inline constexpr double sqrt3 = 1.7320508075688772935;

}  // namespace charsum::constants
