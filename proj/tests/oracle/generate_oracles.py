"""Reference values for the unit tests, computed with mpmath at high precision.

Run: python3 tests/oracle/generate_oracles.py
The printed values are pasted into tests/*.cpp; nothing reads this at build time.
"""
import mpmath as mp

mp.mp.dps = 60


def c(z):
    z = mp.mpc(z)
    return f"{{{mp.nstr(z.real, 17)}, {mp.nstr(z.imag, 17)}}}"


def r(x):
    return mp.nstr(mp.mpf(x), 17)


print("# special functions")
print("hyp1f1(0.3+0.2i; 1.7-0.4i; 2.5+1i) =", c(mp.hyp1f1(mp.mpc(0.3, 0.2), mp.mpc(1.7, -0.4), mp.mpc(2.5, 1))))
print("hyp1f1(-2.5; 0.5; -10) =", c(mp.hyp1f1(-2.5, 0.5, -10)))
print("hyp1f1(0.25; 0.5; -12) =", c(mp.hyp1f1(0.25, 0.5, -12)))
print("hyp2f1(0.5+1i, 0.5-1i; 1.5; 0.9) =", c(mp.hyp2f1(mp.mpc(0.5, 1), mp.mpc(0.5, -1), 1.5, 0.9)))
print("hyp2f1(1, 2; 3; -0.5) =", c(mp.hyp2f1(1, 2, 3, -0.5)))
print("hyp0f1(2.5; -3+1i) =", c(mp.hyp0f1(2.5, mp.mpc(-3, 1))))
print("hyp0f2(1, 2; 2.25) =", c(mp.hyper([], [1, 2], 2.25)))
print("poch(0.5+0.5i, 5) =", c(mp.rf(mp.mpc(0.5, 0.5), 5)))
print("gamma(0.3+2i) =", c(mp.gamma(mp.mpc(0.3, 2))))
print("gamma(-2.5) =", c(mp.gamma(-2.5)))
print("gamma(6) =", c(mp.gamma(6)))
print("loggamma(5+3i) =", c(mp.loggamma(mp.mpc(5, 3))))
print("hermite(7, 0.3+0.1i) =", c(mp.hermite(7, mp.mpc(0.3, 0.1))))
z = mp.mpf(1.5)
reg = mp.nsum(lambda k: z**k / (mp.factorial(k) * mp.gamma(-2 + k)) if k >= 3 else 0, [0, mp.inf])
print("hyp0f1_regularized(-2; 1.5) =", c(reg))
print("hyp0f1_regularized(2.5; -3+1i) =", c(mp.hyp0f1(2.5, mp.mpc(-3, 1)) / mp.gamma(2.5)))
x, y, w = mp.mpc(0.5, 0.2), mp.mpc(-0.3, 0.6), mp.mpc(0.63, 0.63)
mehler = mp.nsum(lambda n: mp.hermite(int(n), x) * mp.hermite(int(n), y) * (w / 2) ** n / mp.factorial(n), [0, mp.inf])
print("mehler(0.5+0.2i, -0.3+0.6i, 0.63+0.63i) =", c(mehler))

print("# quadrature state, Fock-side sums")
lam, beta = mp.mpc(2, 1), mp.mpc(1, 1)
wq = (lam - 1) / (lam + 1)
uq = beta / (lam + 1)
N = 400
a = [mp.mpc(1), uq]
for n in range(1, N):
    a.append((uq * a[n] + wq * a[n - 1]) / (n + 1))  # Taylor coefficients
cn = [a[n] * mp.sqrt(mp.factorial(n)) for n in range(N)]
norm = mp.fsum(abs(x) ** 2 for x in cn)
print("quad lambda=2+1i beta=1+1i: N^2 =", r(1 / norm))


def mom(cv, n, m):
    s = mp.mpc(0)
    for k in range(len(cv) - max(n, m)):
        s += mp.conj(cv[n + k]) * cv[m + k] * mp.sqrt(mp.factorial(n + k) * mp.factorial(m + k)) / mp.factorial(k)
    return s / mp.fsum(abs(x) ** 2 for x in cv)


print("  <a> =", c(mom(cn, 0, 1)))
print("  <a^dag a> =", c(mom(cn, 1, 1)))
print("  <a^dag^2 a> =", c(mom(cn, 2, 1)))
print("  <a^dag a^3> =", c(mom(cn, 1, 3)))

print("# amplitude-squared states")
mp.mp.dps = 400


def amp2_coeffs(lam, beta, parity, dim):
    s = mp.sqrt((lam - 1) / (lam + 1))
    cc = s / 2
    b = (1 + beta / ((lam - 1) / s)) / 4
    if parity == "odd":
        b, low, off = b + mp.mpf(1) / 2, mp.mpf(3) / 2, 1
    else:
        low, off = mp.mpf(1) / 2, 0
    # Taylor series of exp(-c z^2) 1F1(b; low; 2 c z^2), times z for odd.
    out = [mp.mpc(0)] * dim
    M = (dim - off + 1) // 2
    e = [(-cc) ** j / mp.factorial(j) for j in range(M)]
    f = [mp.rf(b, k) * (2 * cc) ** k / (mp.rf(low, k) * mp.factorial(k)) for k in range(M)]
    for m in range(M):
        n = 2 * m + off
        if n < dim:
            out[n] = mp.fsum(e[m - k] * f[k] for k in range(m + 1)) * mp.sqrt(mp.factorial(n))
    return out


for lam, beta, parity in [(mp.mpc(3), mp.mpc(1), "even"), (mp.mpc(3), mp.mpc(1), "odd"), (mp.mpc(2, 1), mp.mpc(5), "even")]:
    cv = amp2_coeffs(lam, beta, parity, 400)
    nrm = mp.fsum(abs(x) ** 2 for x in cv)
    cvn = [x / mp.sqrt(nrm) for x in cv]
    nmean = mom(cvn, 1, 1).real
    # F = a^2 + a^dag^2, G = -i(a^2 - a^dag^2)
    m20 = mom(cvn, 0, 2)
    m40 = mom(cvn, 0, 4)
    m22 = mom(cvn, 2, 2)
    m11 = nmean
    # <a^2 a^dag^2> = <a^dag^2 a^2> + 4<a^dag a> + 2
    aa = m22 + 4 * m11 + 2
    varF = 2 * m40.real + m22.real + aa.real - (2 * m20.real) ** 2
    varG = -2 * m40.real + m22.real + aa.real - (2 * m20.imag) ** 2
    comm = 4 * m11 + 2
    defect = mp.sqrt(varF) * mp.sqrt(varG) - comm
    print(f"amp2 lambda={lam} beta={beta} {parity}: <n> =", r(nmean), " var_F =", r(varF), " var_G =", r(varG),
          " comm =", r(comm), " defect =", r(defect))
    print("   c_0..c_4 (psi(0)=1 or psi'(0)=1) =", ", ".join(c(x) for x in cv[:5]))

print("# deformed g(n)=n closed form at lambda=1, beta=1")
mp.mp.dps = 40
beta = mp.mpf(1)
n0f2 = mp.hyper([], [1, 2], abs(beta) ** 2 / 4)
amps = [mp.mpf(0)] + [(beta / 2) ** k / (mp.gamma(2 + k) * mp.factorial(k)) * mp.sqrt(mp.factorial(k + 1)) / mp.sqrt(n0f2) for k in range(4)]
print("c_0..c_4 =", ", ".join(r(x) for x in amps))
