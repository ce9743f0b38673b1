"""Reference values for the test suite, computed with mpmath at 30 digits.

Run: python3 tests/oracle/generate_oracles.py > tests/oracle_values.hpp
"""
import mpmath as mp

mp.mp.dps = 30


def eta_bw(t, w, M=0, G=1):
    num = mp.expm1(-G * t / 2) ** 2 + 4 * mp.exp(-G * t / 2) * mp.sin((w - M) * t / 2) ** 2
    return G / (2 * mp.pi) * num / ((w - M) ** 2 + G ** 2 / 4)


def fwhm(t):
    half = eta_bw(t, 0) / 2
    # first crossing to the right of the peak: scan in steps well below the
    # oscillation scale, then refine
    step = min(mp.mpf(1) / 2, mp.mpf(2.78) / t) / 64
    w = mp.mpf(0)
    while eta_bw(t, w + step) > half:
        w += step
    root = mp.findroot(lambda x: eta_bw(t, x) - half, (w, w + step), solver="anderson")
    return 2 * root


def band_self_energy_real(E, g, M, E0, a):
    return g ** 2 / (2 * mp.pi) * (1 + a * E) * mp.log(abs((E - M - E0) / (E - M + E0)))


def band_levels(g, M, E0, a):
    F = lambda E: E - M + band_self_energy_real(E, g, M, E0, a)
    dF = lambda E: 1 + mp.diff(lambda x: band_self_energy_real(x, g, M, E0, a), E)
    out = []
    for edge, sgn in ((M - E0, -1), (M + E0, 1)):
        # bracket in the distance to the edge on a log scale
        ds = [mp.mpf(10) ** (-k / mp.mpf(4)) for k in range(80, -12, -1)]
        vals = [F(edge + sgn * d) for d in ds]
        for i in range(len(ds) - 1):
            if vals[i] * vals[i + 1] < 0:
                d = mp.findroot(lambda x: F(edge + sgn * x), (ds[i], ds[i + 1]), solver="anderson")
                E = edge + sgn * d
                out.append((E, sgn * d, 1 / dF(E)))
    return out


def band_density(E, g, M, E0, a):
    im = g ** 2 * (1 + a * E) / 2
    re = band_self_energy_real(E, g, M, E0, a)
    return im / (mp.pi * ((E - M + re) ** 2 + im ** 2))


def band_survival(t, g, M, E0, a):
    lo, hi = M - E0, M + E0
    cont = mp.quad(lambda E: band_density(E, g, M, E0, a) * mp.exp(-1j * E * t),
                   mp.linspace(lo, hi, 41))
    atoms = sum(Z * mp.exp(-1j * E * t) for E, _, Z in band_levels(g, M, E0, a))
    return abs(cont + atoms) ** 2


def smooth_f2(k, M, E0, a, L):
    th = M - E0
    return (1 + a * k) * mp.sqrt(k - th) / (k ** 2 + L ** 2) if k > th else mp.mpf(0)


def smooth_real(E, g, M, E0, a, L):
    th = M - E0
    f = lambda k: smooth_f2(k, M, E0, a, L)
    if E <= th:
        val = mp.quad(lambda k: f(k) / (k - E), [th, th + 1, mp.inf])
    else:
        b = 2 * E - th
        fe = f(E)
        val = mp.quad(lambda k: (f(k) - fe) / (k - E), [th, E, b]) + fe * mp.log((b - E) / (E - th))
        val += mp.quad(lambda k: f(k) / (k - E), [b, mp.inf])
    return g ** 2 / (2 * mp.pi) * val


def emit(name, value, comment=""):
    c = f"  // {comment}" if comment else ""
    print(f"inline constexpr double {name} = {mp.nstr(value, 17)};{c}")


print("#ifndef DECAY_TESTS_ORACLE_VALUES_HPP_")
print("#define DECAY_TESTS_ORACLE_VALUES_HPP_")
print()
print("// Generated by tests/oracle/generate_oracles.py (mpmath, 30 digits). Do not edit.")
print()
print("namespace oracle {")
print()
ystar = mp.findroot(lambda y: y - 2 * mp.sqrt(2) * mp.sin(y / 2), 2.8)
emit("kShortTimeConstant", ystar, "root of y = 2 sqrt(2) sin(y / 2)")
for t, label in ((0.05, "0p05"), (0.1, "0p1"), (0.2, "0p2"), (0.5, "0p5"), (1, "1"), (3, "3"), (20, "20"), (100, "100")):
    emit(f"kFwhmT{label}", fwhm(mp.mpf(t)), f"delta omega / Gamma at t = {t} tau")
emit("kPeakAtTau", eta_bw(1, 0), "eta(tau, M) for Gamma = 1")
emit("kLorentzMass50", 2 / mp.pi * mp.atan(100), "Lorentzian mass within M +/- 50 Gamma")
emit("kLorentzMass25", 2 / mp.pi * mp.atan(50), "Lorentzian mass within M +/- 25 Gamma")

M, m1 = mp.mpf("139.57"), mp.mpf("105.658")
emit("kPiplusRatioMu", (mp.mpf(1) / 2 - m1 ** 2 / (2 * M ** 2)), "Gamma_1 / Gamma for pi+ -> mu nu")
emit("kPiplusRatioNu", (mp.mpf(1) / 2 + m1 ** 2 / (2 * M ** 2)), "Gamma_2 / Gamma")
emit("kPiplusOmegaMu", (M ** 2 + m1 ** 2) / (2 * M), "muon energy at omega = M")
emit("kPiplusOmegaNu", (M ** 2 - m1 ** 2) / (2 * M), "neutrino energy at omega = M")
hbar = mp.mpf("6.582119569e-22")
emit("kGammaPi0MeV", hbar / mp.mpf("8.52e-17"), "hbar / tau_pi0")
emit("kGammaPiplusEv", hbar / mp.mpf("2.6033e-8") * mp.mpf(10) ** 6, "hbar / tau_pi+")

g = mp.mpf("0.95")
a = mp.mpf("0.0396")
Mb = (1 / g ** 2 - 1) / a
E0 = mp.mpf("2.52")
emit("kBandMass", Mb, "solves g^2 (1 + alpha M) = 1")
levels = band_levels(g, Mb, E0, a)
for i, (E, d, Z) in enumerate(levels, 1):
    emit(f"kBandLevel{i}", E)
    emit(f"kBandLevel{i}Distance", d, "signed distance to the nearest band edge")
    emit(f"kBandLevel{i}Residue", Z)
emit("kBandSurvival0p4", band_survival(mp.mpf("0.4"), g, Mb, E0, a), "p(0.4 tau)")
emit("kBandSurvival0p79", band_survival(mp.mpf("0.79"), g, Mb, E0, a), "p(0.79 tau)")
emit("kBandSurvival3", band_survival(mp.mpf(3), g, Mb, E0, a), "p(3 tau)")

gs, Ms, E0s, as_, Ls = mp.mpf(1), mp.mpf(3), mp.mpf("2.5"), mp.mpf("0.0396"), mp.mpf(1)
emit("kSmoothRealBelow", smooth_real(mp.mpf(0), gs, Ms, E0s, as_, Ls), "Re Pi(0), g = 1, M = 3, E0 = 2.5, alpha = 0.0396, Lambda = 1")
emit("kSmoothRealAbove", smooth_real(mp.mpf(3), gs, Ms, E0s, as_, Ls), "Re Pi(3), same model")
emit("kSmoothRealThreshold", smooth_real(Ms - E0s, gs, Ms, E0s, as_, Ls), "Re Pi at threshold")
R = smooth_real(Ms - E0s, gs, Ms, E0s, as_, Ls)
emit("kSmoothCriticalCoupling", mp.sqrt(E0s / R), "smallest g binding a level below threshold")
print()
print("}  // namespace oracle")
print()
print("#endif  // DECAY_TESTS_ORACLE_VALUES_HPP_")
