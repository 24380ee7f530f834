"""High-precision reference values frozen into the C++ test suites.

Run with: python3 tests/oracles/freeze_values.py
Every number printed here is computed with mpmath at 50 digits and is
independent of the library's own special functions.
"""
import mpmath as mp

mp.mp.dps = 50
Phi = lambda x: mp.ncdf(x)
pdf = lambda x: mp.npdf(x)
qnt = lambda p: mp.sqrt(2) * mp.erfinv(2 * p - 1)
z975 = qnt(mp.mpf("0.975"))


def cond_cov(bz, crit=z975):
    r = bz / mp.sqrt(2)
    return Phi(r + crit * mp.sqrt(2)) - Phi(r - crit * mp.sqrt(2))


def show(name, v):
    print(f"{name:40s} {mp.nstr(v, 20)}")


show("pdf(1)", pdf(1))
show("Phi(1.96)", Phi(mp.mpf("1.96")))
show("Phi(-8)", Phi(-8))
show("Phi(-30)", Phi(-30))
show("quantile(0.975)", z975)
show("quantile(1e-10)", qnt(mp.mpf("1e-10")))
show("quantile(0.0005)", qnt(mp.mpf("0.0005")))
show("Phi(1.96/sqrt2)", Phi(mp.mpf("1.96") / mp.sqrt(2)))
show("Phi(3/sqrt2)", Phi(3 / mp.sqrt(2)))
show("cov p=1 (z975)", cond_cov(0))
show("cov p=0.05 (z975)", cond_cov(z975))
show("cov p=0.001 (z975)", cond_cov(-qnt(mp.mpf("0.0005"))))
show("cov b=1.96 (rounded critical value)", cond_cov(mp.mpf("1.96"), mp.mpf("1.96")))
show("ci lo b=2", 1 - z975 / mp.sqrt(2))
show("ci hi b=2", 1 + z975 / mp.sqrt(2))
show("2Phi(-3.29/sqrt2)", 2 * Phi(-mp.mpf("3.29") / mp.sqrt(2)))
show("folded mean (1,1)", mp.quad(lambda x: abs(x) * pdf(x - 1), [-mp.inf, 0, mp.inf]))
show("folded mean (0,1)", mp.sqrt(2 / mp.pi))
show("log pdf(1)", mp.log(pdf(1)))


def mix(b, t, se):
    return (pdf((b + t) / se) + pdf((b - t) / se)) / (2 * se)


def score(b, t, se):
    u, v = (b + t) / se, (b - t) / se
    return (-(b + t) * pdf(u) + (b - t) * pdf(v)) / (se**2 * (pdf(u) + pdf(v)))


def fisher(t, se):
    f = lambda b: score(b, t, se) ** 2 * mix(b, t, se)
    return 2 * mp.quad(f, [0, t, t + 40 * se])


show("score(1,1,1)", score(mp.mpf(1), mp.mpf(1), mp.mpf(1)))
for t in ["0.5", "1", "2", "3", "20"]:
    show(f"fisher({t},1)", fisher(mp.mpf(t), mp.mpf(1)))
show("fisher(1,0.5)", fisher(mp.mpf(1), mp.mpf("0.5")))
