import numpy as np
from p2tau.monodromy import derived_params
from p2tau.geometry import phase_points, theta, theta_prime
from p2tau.jump import parametrix_pair_with_derivs, JumpField, _hprod, model_stokes_h
from p2tau.corrections import (_p_factor, _inv2, f_tilde_integrand,
                               _f_tilde_direct, closed_form_term)

mp = derived_params(0.3 + 0.2j, -0.25 + 0.1j)
t = 2.0
print("nu =", mp.nu)

z = np.array([0.3j, 1.5j, -0.8j, 0.05 + 0.9j])

# 1) P'P^{-1} vs raw parametrix z-log-derivative
p, p_z, p_t = _p_factor(z, t, mp)
x_strip = p_z @ _inv2(p)
r, r_dz, r_dt, l_val, l_dz, l_dt = parametrix_pair_with_derivs(z, t, mp)
x_raw = r_dz @ _inv2(r)
print("P'P^-1 vs raw:", np.max(np.abs(x_strip - x_raw)))

# 2) t-log-derivative consistency: inv(r)@r_t vs stripped formula (sector 0)
q = _inv2(p) @ p_t
geo = phase_points(z, t)
zeta = geo.zeta
q2 = q.copy()
q2[..., 0, 0] += zeta**2 / (4 * t)
q2[..., 1, 1] -= zeta**2 / (4 * t)
e_m = np.exp(-zeta**2 / 2)
q2[..., 0, 1] *= e_m
q2[..., 1, 0] /= e_m
dph = np.diag([np.exp(0.5j * np.pi * (mp.nu + 1.0)), 1.0])
rc = dph @ _hprod(mp, 0)
f5 = np.diag([mp.h, 1 / mp.h])
m_strip = np.linalg.inv(rc @ f5) @ q2 @ (rc @ f5)
th = theta(z)
e6 = np.exp(1j * t * th)
m_strip[..., 0, 1] /= e6**2
m_strip[..., 1, 0] *= e6**2
m_strip[..., 0, 0] += 1j * th
m_strip[..., 1, 1] -= 1j * th
m_raw = _inv2(r) @ r_dt
print("Phi^-1 Phi_t vs stripped:", np.max(np.abs(m_strip - m_raw)))

# 3) F-tilde: J-form vs direct parametrix form
ft_j = f_tilde_integrand(z, t, mp)
ft_d = _f_tilde_direct(z, t, mp)
print("f_tilde J-form:", ft_j)
print("f_tilde direct:", ft_d)
print("diff:", np.max(np.abs(ft_j - ft_d)))
