#pragma once

// reference values frozen from an independent 50-digit computation;
// tolerances in the tests reflect double rounding of the inputs, not
// uncertainty in these constants

namespace refvals {

// beta function
inline constexpr double kBetaQuarterHalf = 5.2441151085842396;    // B(1/4,1/2)
inline constexpr double kBetaEighth58 = 8.8195151919726622;       // B(1/8,5/8)
inline constexpr double kBetaEighth1324 = 9.1240371367980715;     // B(1/8,13/24)
inline constexpr double kBetaThird1324 = 4.0317730095196221;      // B(1/3,13/24)
inline constexpr double kPiOverSin38 = 3.4004353847414769;        // pi/sin(3pi/8)
inline constexpr double kPiOverSin1124 = 3.1687013327565169;      // pi/sin(11pi/24)

// log-gamma spot values
inline constexpr double kLgammaHalf = 0.57236494292470009;
inline constexpr double kLgamma15 = -0.12078223763524522;
inline constexpr double kLgamma77 = 7.9265413562690044;
inline constexpr double kLgamma123 = 18.238983407092242;
inline constexpr double kLgamma0001 = 6.9071788853838537;
inline constexpr double kLgamma1715 = 709.14316303092824;
inline constexpr double kLgammaEighth = 2.0194183575537963;
inline constexpr double kLgamma1324 = 0.49464429223972832;        // x = 13/24

// sum_{n>=0} z^n/(n+4) at z = 0.4+0.2i
inline constexpr double kMonomial3ImageRe = 0.34832907729320325;
inline constexpr double kMonomial3ImageIm = 0.085590670066977197;

// one-parameter endpoint kernel
inline constexpr double kPhiQuarterAtMinus1 = 1.0500821185960282;
inline constexpr double kPhiHalfAt03_01Re = 2.1137513639624146;
inline constexpr double kPhiHalfAt03_01Im = 0.045420179824081071;

// log-weight measure
inline constexpr double kLogweightTailHalf = 0.84657359027997265;
inline constexpr double kLogweightTail099 = 0.056051701859880914;
inline constexpr double kLogweightMu5 = 0.40833333333333333;      // H_6/6

// dyadic partial sum at (p,q) = (4,4), depth 40
inline constexpr double kLogweightDyadicS40 = 2.1609282669583076;

// f = sum_{k<=32} z^k
inline constexpr double kOnes33CoeffSum = 4.0887982257395504;
inline constexpr double kOnes33H1 = 2.4052235299200270;
inline constexpr double kOnes33Ratio = 1.6999660010292273;

// aperture fraction of the cone region over boundary points
inline constexpr double kAperture06 = 0.14690383465599603;
inline constexpr double kAperture03_065 = 0.079451120477095832;

// damped-kernel evaluations
inline constexpr double kLogTestAt09e03Re = 1.0966901878270677;
inline constexpr double kLogTestAt09e03Im = 0.79555680139287050;
inline constexpr double kLogTestAtHalf = 1.1812322182992825;

// (1 - conj(a) z)^{-3/2}, a = 0.7-0.2i, z = 0.3+0.4i
inline constexpr double kKernelEvalRe = 0.93919959871567647;
inline constexpr double kKernelEvalIm = 0.58730289692317256;

// (1-t)^{-1/2} dt measure
inline constexpr double kPowNegHalfMu10 = 0.54052036714575414;    // B(11,1/2)
inline constexpr double kPowNegHalfTail09 = 0.63245553203367587;

// image of the constant 1 at z = 1/2: 2 log 2
inline constexpr double kTwoLogTwo = 1.3862943611198906;

}
