#pragma once
// Generated by gen_reference_values.py (mpmath, 40 digits). Do not edit.
#include <complex>

namespace ref {

struct Complex1 { double re, im; double wr, wi; };
inline constexpr Complex1 kFaddeeva[] = {
    {0.0, 1.0000000000000000, 4.2758357615580700e-1, 0.0},
    {5.0000000000000000e-1, 5.0000000000000000e-1, 5.3315670791217491e-1, 2.3048823138445841e-1},
    {3.0000000000000000, 1.0000000000000001e-1, 7.9426809987699907e-3, 2.0074234309867737e-1},
    {-2.5000000000000000, 1.5000000000000000, 1.1123345956255827e-1, -1.6323674719804184e-1},
    {1.0000000000000001e-1, 6.0000000000000000, 9.2752429318341863e-2, 1.5056529933896429e-3},
    {1.2000000000000000e+1, 5.0000000000000000e-1, 1.9762436764948046e-3, 4.7097556962267810e-2},
    {1.0000000000000000e-3, 1.0000000000000000e-3, 9.9887162233541125e-1, 1.1263806715998665e-3},
    {3.0000000000000000e+1, 3.0000000000000000e+1, 9.4057695349340730e-3, 9.4005455633548719e-3},
    {4.0000000000000000, 2.0000000000000001e-4, 7.9624454300300225e-6, 1.4595358927831183e-1},
};

struct Amplitude { double b, a; double re, im; };
inline constexpr Amplitude kScaledAmplitude[] = {
    {0, 0, 1.0000000000000000, 0.0},
    {1, 0.5, 4.4281571248016553e-1, -3.1237550773300762e-1},
    {1, -0.5, 6.2174574795117590e-1, -8.9394808415839132e-1},
    {3, 2, 1.8776029943445060e-2, -2.3940965743408960e-2},
    {3, -2, 2.5570268375990188e-3, -1.7732914138962726e-2},
    {50, 3, 1.0610919042780394e-5, -1.7670751188249936e-4},
    {50, -3, -1.0610919042780394e-5, -1.7670751188249936e-4},
    {0.3, 8, 1.2425673731262986e-15, -4.5244001469843722e-17},
    {0.3, -8, -1.4098930703539689, -1.2914821993557538},
    {12, 0.01, 5.6602287294975178e-5, -6.6958693500548784e-2},
    {5, -6.5, 3.4860967558824576e-6, -6.5877958352825043e-6},
    {0, 4, 6.3342483666239843e-5, 0.0},
};

struct Zero { int m; double chi; double j1; };
inline constexpr Zero kJ0Zeros[] = {
    {1, 2.4048255576957728, 5.1914749728946679e-1},
    {2, 5.5200781102863106, -3.4026480655836815e-1},
    {3, 8.6537279129110122, 2.7145229992838192e-1},
    {10, 3.0634606468431975e+1, -1.4416597768637321e-1},
    {100, 3.1337426607752784e+2, -4.5072191303378350e-2},
    {1000, 3.1408072952250786e+3, -1.4237030608410289e-2},
    {5000, 1.5707177877743714e+4, -6.3663568845874644e-3},
};

struct Bessel { double x, j0, j1; };
inline constexpr Bessel kBessel[] = {
    {0, 1.0000000000000000, 0.0},
    {0.0001, 9.9999999750000000e-1, 4.9999999937500002e-5},
    {0.5, 9.3846980724081290e-1, 2.4226845767487389e-1},
    {2.5, -4.8383776468197996e-2, 4.9709410246427404e-1},
    {7.9, 1.9436184484127824e-1, 2.1917939992175120e-1},
    {8.1, 1.4751745404437767e-1, 2.4760776698159288e-1},
    {25, 9.6266783275958116e-2, -1.2535024958028990e-1},
    {150.5, 3.0500883754422782e-2, -5.7342040310382326e-2},
    {3000.25, -1.0594291266934041e-2, 9.9957291561918991e-3},
    {-4.2, -3.7655705436756764e-1, 1.3864694212604623e-1},
};

struct Mode { int m, l; double R, L, D, tau; double kappa, xi, q, p; };
inline constexpr Mode kModes[] = {
    {1, 0, 10, 20, 5, 3.0, 2.4048255576957728e-1, 8.6685013396689799e-1, 1.0000000000000000, 1.0000000000000000},
    {2, 3, 10, 20, 5, 3.0, 7.2579523452633073e-1, 2.7864658360324984, 8.5355339059327376e-1, -8.5355339059327376e-1},
    {1, 1, 500, 20, 5, 3.0, 1.5715324923963610e-1, 5.3946011192822498e-4, 1.4644660940672624e-1, -1.4644660940672624e-1},
    {7, 40, 10, 1000, 12, 3.0, 2.1248827384639601, 7.3780216492645344, 5.3139525976465669e-1, 5.3139525976465669e-1},
    {3, 5, 6, 14, 7.5, 3.0, 1.8273129850845785, 2.9096017273634607, 7.6601603825766828e-1, -7.6601603825766828e-1},
};

// Box sums: local and pre-modulus non-local in units of the prefactor.
struct BoxSum { double R, L, D, tau, omega_gap, delay, tilt; int max_m, max_l;
                double local, nl_re, nl_im; };
inline constexpr BoxSum kBoxSums[] = {
    {10, 20, 5, 3.0, 1, 0.5, 0, 3, 5, 4.4422007698397208e-1, 8.1760704966314526e-1, -1.6484063507331282},
    {10, 20, 5, 3.0, 1, 6.9, 0, 20, 40, 4.4493944288809140e-1, 6.1892269531049387e-1, 9.3798066812080921e-1},
    {8, 30, 9, 3.0, 2.5, -2, 0.7, 6, 12, 5.0379545155228246e-3, -5.6504575643349636e-3, -2.1621556272533052e-2},
    {10, 20, 5, 3.0, 0, 3, 0, 25, 45, 3.1593184715888625, -1.5683184806222697e-1, 2.5960033337081863e-1},
};

// Beat periods at tau = 3.
inline constexpr double kBeatRadialR10L0 = 6.7230347043663214;
inline constexpr double kBeatLongitudinalDiscM1 = 1.3747837967468128e+1;
// m = 1, D = 5, t = 2.5, tau = 3, R = 10
inline constexpr double kStationaryWavenumber = 3.2064340769276970e-1;
inline constexpr double kOverlapD5 = 1.9304541362277092e-3;

}  // namespace ref
