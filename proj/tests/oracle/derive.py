#!/usr/bin/env python3
"""Independent reference values for the unit tests.

Computed with mpmath at 30 digits; the output is written to
tests/oracle_values.hpp and checked in. Rerun after changing a case:

    python3 tests/oracle/derive.py > tests/oracle_values.hpp
"""
import mpmath as mp

mp.mp.dps = 30
pi = mp.pi
vals = []


def put(name, v, what):
    vals.append((name, mp.mpf(v), what))


# 1/(4 pi |r - r'|) over the unit ball, |r| = 2, by direct 2-D quadrature
def shell():
    f = lambda rp, th: rp**2 * mp.sin(th) * 2 * pi / (4 * pi * mp.sqrt(4 + rp**2 - 4 * rp * mp.cos(th)))
    return mp.quad(f, [0, 1], [0, pi])


put("ball_newton_r2", shell(), "int_{|r'|<1} d3r' / (4 pi |r - r'|), |r| = 2")


# angular kernel by adaptive quadrature, split where the integrand peaks
def kernel(rho, rp):
    rho, rp = mp.mpf(rho), mp.mpf(rp)
    if abs(rho - rp) < mp.mpf(10) ** (-mp.mp.dps // 2):
        return 1 / (2 * rho)  # measure-zero point of the radial integral
    f = lambda th: (rho - rp * mp.cos(th)) / (rho**2 + rp**2 - 2 * rho * rp * mp.cos(th)) / (2 * pi)
    return mp.quad(f, [-pi, -0.1, 0, 0.1, pi])


for rho, rp, tag in [(2, 1, "2_1"), (0.5, 1, "05_1"), (3, 2.5, "3_25"), (4, 0, "4_0")]:
    put("kernel_" + tag, kernel(rho, rp), f"angular kernel rho={rho} rho'={rp}")


# A_theta of a Phi = 1, R = 1 solenoid by radial assembly of the adaptive kernel
def a_theta(rho):
    B = 1 / pi
    pts = [0, 1] if rho >= 1 else [0, rho, 1]
    return mp.quad(lambda rp: B * rp * kernel(rho, rp), pts)


for rho, tag in [(0.5, "05"), (2, "2"), (5, "5")]:
    put("solenoid_a_theta_" + tag, a_theta(rho), f"A_theta of Phi=1 R=1 solenoid at rho={rho}")

# point charge q = 4 pi, potential and gradient at distance 2
put("coulomb_v_r2", 4 * pi / (4 * pi * 2), "V of q=4pi at distance 2")
put("coulomb_grad_x_r2", mp.diff(lambda x: 1 / x, 2), "d/dx of q/(4pi|r|) at (2,0,0), q = 4pi")

# d/dt of exterior A for linear (rate 1) and sinusoidal (phi0 1, omega 2) flux at rho = 2
put("dadt_linear_rho2", mp.diff(lambda t: (1 + t) / (2 * pi * 2), 0.3), "d/dt Phi(t)/(2 pi rho), rate 1, rho 2")
put("dadt_sin_rho2", mp.diff(lambda t: mp.sin(2 * t) / (2 * pi * 2), 0), "d/dt sin(2t)/(2 pi rho) at t=0, rho 2")

# Faraday: circulation of E around rho = 1 equals -dPhi/dt = -2 pi
put("faraday_e_theta", -2 * pi / (2 * pi * 1), "E_theta at rho=1 for dPhi/dt = 2 pi")


# midpoint circulation of Phi/(2 pi rho) theta_hat around an inscribed regular 720-gon at rho = 2,
# summed segment by segment
def polygon_circ(n, radius):
    tot = mp.mpf(0)
    for i in range(n):
        a0 = 2 * pi * i / n
        a1 = 2 * pi * (i + 1) / n
        p0 = mp.matrix([radius * mp.cos(a0), radius * mp.sin(a0)])
        p1 = mp.matrix([radius * mp.cos(a1), radius * mp.sin(a1)])
        m = (p0 + p1) / 2
        r2 = m[0] ** 2 + m[1] ** 2
        A = mp.matrix([-m[1], m[0]]) / (2 * pi * r2)
        d = p1 - p0
        tot += A[0] * d[0] + A[1] * d[1]
    return tot


put("circulation_720_rho2", polygon_circ(720, 2), "midpoint circulation, 720-gon at rho = 2, Phi = 1")
put("perimeter_360", 2 * 360 * mp.sin(pi / 360), "perimeter of inscribed 360-gon, radius 1")


# surface term of a coulomb-like probe (E = z_hat x r' / r'^3) on the sphere R_s, r = (0.3, 0.2, 0.1)
def surface(Rs, profile):
    r = mp.matrix([0.3, 0.2, 0.1])

    def comp(c):
        def f(th, ph):
            n = mp.matrix([mp.sin(th) * mp.cos(ph), mp.sin(th) * mp.sin(ph), mp.cos(th)])
            rp = n * Rs
            E = mp.matrix([-rp[1], rp[0], 0]) * profile(Rs)
            cr = mp.matrix([n[1] * E[2] - n[2] * E[1], n[2] * E[0] - n[0] * E[2], n[0] * E[1] - n[1] * E[0]])
            d = mp.norm(r - rp)
            return cr[c] / d * Rs**2 * mp.sin(th)

        return mp.quad(f, [0, pi / 2, pi], [-pi, 0, pi]) / (4 * pi)

    v = [comp(c) for c in range(3)]
    return mp.sqrt(sum(x**2 for x in v))


Rs = 4.5 * pi
put("surface_coulomb_45pi", surface(Rs, lambda R: 1 / R**3), "surface term, coulomb-like, R_s = 4.5 pi")
put("surface_dipole_45pi", surface(Rs, lambda R: 1 / R**4), "surface term, dipole-like, R_s = 4.5 pi")

print("// Generated by tests/oracle/derive.py (mpmath, 30 digits). Do not edit.")
print("#ifndef GAUGEFIELD_TEST_ORACLE_VALUES_HPP")
print("#define GAUGEFIELD_TEST_ORACLE_VALUES_HPP")
print()
print("namespace oracle")
print("{")
for name, v, what in vals:
    print(f"// {what}")
    print(f"inline constexpr double {name} = {mp.nstr(v, 20)};")
print("} // namespace oracle")
print()
print("#endif")
