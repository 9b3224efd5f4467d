"""Independent reference values for the beta=2 Tracy-Widom c.d.f.

Integrates the Hastings-McLeod solution of Painleve II,
    q'' = s q + 2 q^3,   q(s) ~ Ai(s) as s -> +inf,
backward from a large starting point in high precision, together with
    I1' = -q^2,  I2' = -I1   (I2(s) = int_s^inf (u - s) q(u)^2 du),
so that F2(s) = exp(-I2(s)). The values printed here are frozen into the
Rust test suite; this script is not run by `cargo test`.
"""
import mpmath as mp

mp.mp.dps = 90
S0 = mp.mpf(16)

def rhs(t, y):
    # t = S0 - s, so d/dt = -d/ds
    s = S0 - t
    q, dq, i1, i2 = y
    return [-dq, -(s * q + 2 * q ** 3), q ** 2, i1]

q0 = mp.airyai(S0)
dq0 = mp.airyai(S0, derivative=1)
i1_0 = mp.quad(lambda u: mp.airyai(u) ** 2, [S0, mp.inf])
i2_0 = mp.quad(lambda u: (u - S0) * mp.airyai(u) ** 2, [S0, mp.inf])

sol = mp.odefun(rhs, 0, [q0, dq0, i1_0, i2_0], tol=mp.mpf(10) ** -60, degree=40)

if __name__ == "__main__":
    for s in ["6", "4", "2", "1", "0", "-1", "-1.5", "-2", "-3", "-3.5", "-4", "-5", "-6", "-8"]:
        y = sol(S0 - mp.mpf(s))
        f = mp.exp(-y[3])
        print(f"{s:>5} F={mp.nstr(f, 20)} pdf={mp.nstr(f * y[2], 20)} ccdf={mp.nstr(1 - f, 20)}")
