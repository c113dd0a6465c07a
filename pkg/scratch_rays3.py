import numpy as np
from p2tau.monodromy import derived_params
from p2tau.corrections import _p_factor, _inv2, _trace_ray_points
from p2tau.geometry import phase_points

mp = derived_params(2j, 1j)
t = 2.0

for alpha, tag in ((0.0, "k0 ray"), (-np.pi / 2, "k1 ray")):
    print("=== ray", tag, "alpha =", alpha)
    z, zeta, dz, ws = _trace_ray_points(alpha, t, 12, 12.0)
    p, _, p_t = _p_factor(z, t, mp)
    q = _inv2(p) @ p_t
    q[..., 0, 0] += zeta**2 / (4 * t)
    q[..., 1, 1] -= zeta**2 / (4 * t)
    detp = p[..., 0, 0] * p[..., 1, 1] - p[..., 0, 1] * p[..., 1, 0]
    for j in range(0, 12, 3):
        print(f" |zeta|={abs(zeta[j]):6.2f} z={z[j]:.3f} "
              f"|P|max={np.max(np.abs(p[j])):.2e} detP={detp[j]:.3e} "
              f"|Q11|={abs(q[j,0,0]):.2e} |Q12|={abs(q[j,0,1]):.2e} "
              f"|Q21|={abs(q[j,1,0]):.2e} |Q22|={abs(q[j,1,1]):.2e}")
        print(f"    gauss=|e^(-z2/2)|={np.exp(-(zeta[j]**2).real/2):.2e} "
              f"Q12*gauss={abs(q[j,0,1])*np.exp(-(zeta[j]**2).real/2):.2e} "
              f"Q21/gauss={abs(q[j,1,0])*np.exp((zeta[j]**2).real/2):.2e}")
