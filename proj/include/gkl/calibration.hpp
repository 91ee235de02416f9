#pragma once

// Thresholds measured once with the default configuration and frozen here.
// Each is written as the measured value times (or over) its margin.

namespace gkl::calibration {

// max/min of P_t / K_i along the sharpness families over 3 decades, x 1.2.
inline constexpr double kSharpWidth[4] = {1.2 * 1.2207930861757497, 1.2 * 1.2605115162201157,
                                          1.2 * 2.2892507660407788, 1.2 * 1.050168942784486};

// C_eps for eps = 0.1 on E~_1..E~_4: first passing rung of the ladder
// C_0 2^k (C_0 = 8, 8, 1, e^16), times 2.
inline constexpr double kDominationC[4] = {2.0 * 8192.0, 2.0 * 1024.0, 2.0 * 32.0,
                                           2.0 * 8886110.5205078721};

// Forward profiles x 1.2: t^{1-a} sup|d_t P_t f|, t^{1-a} sup|d_x P_t f|,
// t^{2-a} sup (1 + x_1)|d_x1 P_t f|; a = 1/2, t in [0.01, 10], |x| <= 30.
inline constexpr double kGaussBumpProfile[3] = {1.2 * 0.302375, 1.2 * 0.193948, 1.2 * 0.452141};
inline constexpr double kSnowflakeProfile[3] = {1.2 * 0.532114, 1.2 * 0.0786774, 1.2 * 0.246763};

// Growth of the sin(x_1) profile from t = 0.5 to t = 0.05 on |x| <= 1e3, / 1.2.
inline constexpr double kSinGrowth = 2.99302 / 1.2;

}  // namespace gkl::calibration
