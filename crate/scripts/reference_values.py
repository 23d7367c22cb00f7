"""Reference values frozen into the test suites (mpmath, 50 digits)."""
from mpmath import mp, mpf, mpc, gamma, zeta, altzeta, besseli, zetazero, log, sqrt, pi, exp

mp.dps = 50

def show(label, z):
    z = mpc(z)
    print(f"{label}: re={mp.nstr(z.real, 17)} im={mp.nstr(z.imag, 17)} abs={mp.nstr(abs(z), 17)}")

for k in range(1, 11):
    print(f"zero {k}: t={mp.nstr(zetazero(k).imag, 20)}")

show("gamma(1/2+14.134725i)", gamma(mpc(0.5, 14.134725)))
show("gamma(1/2+10i)", gamma(mpc(0.5, 10)))
show("gamma(1/2+5i)", gamma(mpc(0.5, 5)))
show("gamma(0.3+2.5i)", gamma(mpc(0.3, 2.5)))
show("gamma(-1.7+0.4i)", gamma(mpc(-1.7, 0.4)))
show("gamma(1.9-37i)", gamma(mpc(1.9, -37)))
print("I0(1) =", mp.nstr(besseli(0, 1), 20))
print("I0(30) =", mp.nstr(besseli(0, 30), 20))
print("I0(250) e^-250 =", mp.nstr(besseli(0, 250) * exp(-250), 20))
print("zeta(3) =", mp.nstr(zeta(3), 20))
print("zeta(1/2) =", mp.nstr(zeta(0.5), 20))
for s in [mpc(0.5, 10), mpc(0.5, 14.134725), mpc(0.5, 21.02204), mpc(-0.5, 10), mpc(2.5, -7), mpc(-1.5, 25), mpc(0.5, 50), mpc(0.75, 59)]:
    show(f"eta({s})", altzeta(s))
show("xi(2) = zeta(2) - 4 ln 2", zeta(2) - 4 * log(2))
s = mpc(0.5, 10)
show("xi(1/2+10i)", zeta(s) - 2 * (1 - 2 ** (2 - s)) * zeta(s - 1) / (1 - 2 ** (1 - s)))
for t in [1, 10]:
    s = mpc(0.5, t)
    show(f"varphi_zero(1/2+{t}i)", gamma(1 - s) * mpc(0, -2) ** (mpf(1) / 2 - s) / sqrt(2 * pi))
