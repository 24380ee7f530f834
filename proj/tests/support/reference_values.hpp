#pragma once

// Reference values computed at 50 significant digits with mpmath by
// tests/oracles/freeze_values.py. They do not depend on any code in core/.

namespace defprior::testing {

inline constexpr double kPdfAt1 = 0.24197072451914334980;
inline constexpr double kCdfAt196 = 0.97500210485177956586;
inline constexpr double kCdfAtMinus8 = 6.2209605742717841235e-16;
inline constexpr double kCdfAtMinus30 = 4.9067139271481870595e-198;
inline constexpr double kQuantile975 = 1.9599639845400542355;
inline constexpr double kQuantile1em10 = -6.3613409024040562047;
inline constexpr double kQuantile0005 = -3.2905267314918947932;
inline constexpr double kCdf196OverSqrt2 = 0.91711575217010394026;
inline constexpr double kCdf3OverSqrt2 = 0.98305257323765536353;

// Conditional coverage of b +/- z975 se under N(0, se^2), by two-sided p.
inline constexpr double kCoverageP1 = 0.99442540331921558899;
inline constexpr double kCoverageP05 = 0.91709579096916317528;
inline constexpr double kCoverageP001 = 0.67185942143815323792;

inline constexpr double kCredibleLoB2 = -0.38590382434967794528;
inline constexpr double kCredibleHiB2 = 2.3859038243496779453;
inline constexpr double kConflictTail329 = 0.019998217783908819416;
inline constexpr double kFoldedMean11 = 1.1666309411753725968;
inline constexpr double kSqrt2OverPi = 0.79788456080286535588;
inline constexpr double kLogPdfAt1 = -1.4189385332046727418;

inline constexpr double kScoreAt111 = -0.23840584404423511188;
inline constexpr double kFisherHalf = 0.34326395297234084768;  // theta 0.5, se 1
inline constexpr double kFisher1 = 0.73391167239544327734;     // theta 1, se 1
inline constexpr double kFisher2 = 0.97834451754496753425;     // theta 2, se 1
inline constexpr double kFisher3 = 0.99922396571939559455;     // theta 3, se 1
inline constexpr double kFisher1Se05 = 3.913378070179870137;   // theta 1, se 0.5

}  // namespace defprior::testing
