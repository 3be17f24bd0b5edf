// Generated by tests/oracle/derive.py (mpmath, 30 digits). Do not edit.
#ifndef GAUGEFIELD_TEST_ORACLE_VALUES_HPP
#define GAUGEFIELD_TEST_ORACLE_VALUES_HPP

namespace oracle
{
// int_{|r'|<1} d3r' / (4 pi |r - r'|), |r| = 2
inline constexpr double ball_newton_r2 = 0.16666666666666666667;
// angular kernel rho=2 rho'=1
inline constexpr double kernel_2_1 = 0.5;
// angular kernel rho=0.5 rho'=1
inline constexpr double kernel_05_1 = -1.794940494644880478e-32;
// angular kernel rho=3 rho'=2.5
inline constexpr double kernel_3_25 = 0.33333333333333333333;
// angular kernel rho=4 rho'=0
inline constexpr double kernel_4_0 = 0.25;
// A_theta of Phi=1 R=1 solenoid at rho=0.5
inline constexpr double solenoid_a_theta_05 = 0.079577471545947667884;
// A_theta of Phi=1 R=1 solenoid at rho=2
inline constexpr double solenoid_a_theta_2 = 0.079577471545947667884;
// A_theta of Phi=1 R=1 solenoid at rho=5
inline constexpr double solenoid_a_theta_5 = 0.031830988618379067154;
// V of q=4pi at distance 2
inline constexpr double coulomb_v_r2 = 0.5;
// d/dx of q/(4pi|r|) at (2,0,0), q = 4pi
inline constexpr double coulomb_grad_x_r2 = -0.25;
// d/dt Phi(t)/(2 pi rho), rate 1, rho 2
inline constexpr double dadt_linear_rho2 = 0.079577471545947667884;
// d/dt sin(2t)/(2 pi rho) at t=0, rho 2
inline constexpr double dadt_sin_rho2 = 0.15915494309189533577;
// E_theta at rho=1 for dPhi/dt = 2 pi
inline constexpr double faraday_e_theta = -1.0;
// midpoint circulation, 720-gon at rho = 2, Phi = 1
inline constexpr double circulation_720_rho2 = 1.000006346244574977;
// perimeter of inscribed 360-gon, radius 1
inline constexpr double perimeter_360 = 6.2831055588292331747;
// surface term, coulomb-like, R_s = 4.5 pi
inline constexpr double surface_coulomb_45pi = 0.04715961570399789899;
// surface term, dipole-like, R_s = 4.5 pi
inline constexpr double surface_dipole_45pi = 0.003335860423824639647;
} // namespace oracle

#endif
