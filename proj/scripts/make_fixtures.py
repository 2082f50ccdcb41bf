#!/usr/bin/env python3
"""Regenerates the high-precision oracle fixtures quoted in tests/.

Run from the repository root:  python3 scripts/make_fixtures.py
Paste the emitted blocks into the matching test files when values change.
"""
import mpmath as mp

mp.mp.dps = 60


def frac(x):
    return x - mp.floor(x)


def emit(name, value, digits=20):
    print(f"{name} = {mp.nstr(value, digits)}")


print("// ---- seqgen: sqrt-family phases, alpha = 2, k = 1")
for n in range(1, 5):
    emit(f"frac(2*sqrt({n}))", frac(2 * mp.sqrt(n)))

print()
print("// ---- seqgen: quadratic family, alpha = sqrt2, k = 1, sampled n")
a = mp.sqrt(2)
for n in [1, 2, 3, 10, 137, 4096, 99991, 1000000, 10000000, 100000000]:
    emit(f"frac(sqrt2*{n}^2)", frac(a * n * n))

print()
print("// ---- seqgen: quadratic, alpha = sqrt2, n = 1e6, k = 1e3")
emit("frac(1e3*sqrt2*1e12)", frac(mp.mpf(1000) * a * mp.mpf(10) ** 12))

print()
print("// ---- seqgen: sqrt family, alpha = sqrt2, sampled n, k = 1")
for n in [2, 3, 12345, 99991, 1000000, 100000000]:
    emit(f"frac(sqrt2*sqrt({n}))", frac(a * mp.sqrt(n)))

print()
print("// ---- seqgen: sqrt family, alpha = sqrt3, n = 1e8, k = 1e9 (worst case)")
emit("frac(1e9*sqrt3*1e4)", frac(mp.mpf(10) ** 9 * mp.sqrt(3) * mp.sqrt(mp.mpf(10) ** 8)))

print()
print("// ---- seqgen: power family, alpha = 1, beta = 1/3, sampled n")
for n in [2, 7, 1000, 999983]:
    emit(f"frac({n}^(1/3))", frac(mp.mpf(n) ** (mp.mpf(1) / 3)))

print()
print("// ---- seqgen: power family, alpha = golden, beta = 0.75, n = 123456, k = 77")
g = (1 + mp.sqrt(5)) / 2
emit("value", frac(77 * g * mp.mpf(123456) ** mp.mpf(0.75)))

print()
print("// ---- diophantine: golden ratio convergent qualities (q <= 100)")
for p, q in [(1, 1), (2, 1), (3, 2), (5, 3), (8, 5), (13, 8), (21, 13), (34, 21), (55, 34), (89, 55)]:
    emit(f"quality({p}/{q})", q * abs(q * g - p))
emit("limit 1/sqrt(5)", 1 / mp.sqrt(5))

print()
print("// ---- diophantine: sqrt2 convergent qualities")
for p, q in [(1, 1), (3, 2), (7, 5), (17, 12), (41, 29), (99, 70)]:
    emit(f"quality({p}/{q})", q * abs(q * a - p))
emit("limit 1/(2*sqrt(2))", 1 / (2 * mp.sqrt(2)))

print()
print("// ---- testfn: unit bump mass and fourier samples")
bump = lambda x: mp.e ** (-1 / (1 - x * x)) if abs(x) < 1 else mp.mpf(0)
mass = mp.quad(bump, [-1, 0, 1])
emit("unit bump mass", mass, 25)
for xi in [0.5, 1, 2, 5]:
    ft = mp.quad(lambda x: bump(x) * mp.cos(2 * mp.pi * xi * x), [-1, 0, 1])
    emit(f"bump fourier xi={xi}", ft, 20)

print()
print("// ---- weyl: |S(N, k)| direct sums, sqrt family")
for (N, k, alpha, label) in [(1000, 7, a, "sqrt2"), (1000, 1, mp.mpf(1), "1"),
                             (100, 1, mp.mpf(1), "1"), (10000, 40, a, "sqrt2")]:
    s = mp.nsum(lambda n: mp.e ** (2j * mp.pi * frac(k * alpha * mp.sqrt(n))), [1, N], method="direct")
    emit(f"|S({N},{k})| alpha={label}", abs(s))

print()
print("// ---- weyl: |S(N, k)| direct sums, quadratic family, alpha = sqrt2")
for (N, k) in [(1000, 1), (1000, 7), (10000, 3)]:
    s = mp.nsum(lambda n: mp.e ** (2j * mp.pi * frac(k * a * n * n)), [1, N], method="direct")
    emit(f"|S({N},{k})|", abs(s))

print()
print("// ---- oscphase: truncated oscillatory integral, k=4 r=1 alpha=1 on [1,100]")
h = lambda x: 4 * mp.sqrt(x) - x
integrand = lambda x: mp.e ** (2j * mp.pi * h(x))
# split at the stationary point x = 4, then into unit-phase panels
pieces = [1, 4] + [4 + 96 * i / mp.mpf(256) for i in range(1, 257)]
val = mp.quad(integrand, pieces)
emit("integral re", mp.re(val))
emit("integral im", mp.im(val))
print()
print("// ---- oscphase: same integrand on [1, 16] (no interior stationary point for r=2)")
h2 = lambda x: 4 * mp.sqrt(x) - 2 * x
val2 = mp.quad(lambda x: mp.e ** (2j * mp.pi * h2(x)), [1 + 15 * i / mp.mpf(64) for i in range(65)])
emit("integral re", mp.re(val2))
emit("integral im", mp.im(val2))
