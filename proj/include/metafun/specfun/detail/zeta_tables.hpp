#pragma once

// Frozen coefficient tables for the zeta evaluators.

#include <array>

namespace metafun::specfun::detail {

// B_{2k} / (2k)! for k = 1..30 (Euler-Maclaurin tail).
inline constexpr std::array<double, 30> kBernoulliOverFactorial = {
    8.3333333333333333333e-2,
    -1.3888888888888888889e-3,
    3.3068783068783068783e-5,
    -8.2671957671957671958e-7,
    2.0876756987868098979e-8,
    -5.2841901386874931848e-10,
    1.3382536530684678833e-11,
    -3.3896802963225828668e-13,
    8.5860620562778445641e-15,
    -2.174868698558061873e-16,
    5.5090028283602295152e-18,
    -1.3954464685812523341e-19,
    3.5347070396294674717e-21,
    -8.9535174270375468504e-23,
    2.2679524523376830603e-24,
    -5.7447906688722024453e-26,
    1.4551724756148649019e-27,
    -3.6859949406653101782e-29,
    9.336734257095044672e-31,
    -2.3650224157006299346e-32,
    5.9906717624821343047e-34,
    -1.5174548844682902617e-35,
    3.8437581254541882322e-37,
    -9.7363530726466910353e-39,
    2.4662470442006809571e-40,
    -6.2470767418207436931e-42,
    1.5824030244644914298e-43,
    -4.0082736859489359685e-45,
    1.0153075855569556312e-46,
    -2.5718041582418717499e-48,
};

// Taylor coefficients of Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p)
// in powers of z = p - 1/2; only even powers are nonzero: entry i multiplies z^(2i).
inline constexpr std::array<double, 46> kPsiEvenTaylor = {
    0.38268343236508977173,
    1.7489618723100817974,
    2.1180252076854963732,
    -0.87072166705114807392,
    -3.4733112243465167073,
    -1.6626947308999324496,
    1.2167312889192321345,
    1.3014304161007975773,
    0.030511021827361672421,
    -0.37558030515450952428,
    -0.10857844165640659744,
    0.051832902999549623376,
    0.02999948061990227592,
    -0.002275939670612564226,
    -0.0043826474165803383059,
    -0.00040642301837298469931,
    0.00040060977854221139279,
    0.000089710579913888412978,
    -0.000023025650027239107116,
    -9.3800066019067924847e-6,
    6.3235149476091075042e-7,
    6.5510228192315016662e-7,
    2.2105237455526972587e-8,
    -3.322316176445628835e-8,
    -3.7349109899336560818e-9,
    1.2445067060797739195e-9,
    2.4768205376502191843e-10,
    -3.2842728168916271945e-11,
    -1.1305406852298403678e-11,
    4.5654639795886939276e-13,
    3.9598480945249215196e-13,
    7.8495662212596173171e-15,
    -1.1059043150991233194e-14,
    -7.7385439876415083171e-16,
    2.4857755550271372185e-16,
    3.051479718882721791e-17,
    -4.4142978877933028452e-18,
    -8.6313888781884147393e-19,
    5.7012921968429752176e-20,
    1.9529640164199341077e-20,
    -3.3707667135349602181e-22,
    -3.679459871576221269e-22,
    -7.3118651824447880018e-24,
    5.8690946386765388175e-24,
    3.1307592113656924569e-25,
    -7.9478395660380586372e-26,
};

}  // namespace metafun::specfun::detail
