import numpy as np
import mpmath as mp_
from p2tau.monodromy import derived_params
from p2tau.corrections import _scaled_block, _trace_ray_points

mp = derived_params(2j, 1j)
t = 2.0
nu = mp.nu

z, zeta, dz, ws = _trace_ray_points(0.0, t, 12, 12.0)
bhat, bhat_d = _scaled_block(nu, zeta)

mp_.mp.dps = 40


def ref_block(zv):
    zm = mp_.mpc(zv)
    e1 = mp_.e ** (zm * zm / 4)          # carrier of column 1: e^{+z^2/4}
    u = mp_.pcfd(-nu - 1, 1j * zm) / e1
    v = mp_.pcfd(nu, zm) * e1
    up = (-zm / 2 * mp_.pcfd(-nu - 1, 1j * zm)
          - 1j * mp_.pcfd(-nu, 1j * zm)) / e1
    vp = (nu * mp_.pcfd(nu - 1, zm) - zm / 2 * mp_.pcfd(nu, zm)) * e1
    return np.array([[complex(u), complex(v)], [complex(up), complex(vp)]])


for j in (0, 3, 6, 9, 11):
    ref = ref_block(zeta[j])
    got = bhat[j]
    rel = np.abs(got - ref) / (np.abs(ref) + 1e-300)
    print(f"|zeta|={abs(zeta[j]):6.2f}")
    print("   got ", np.array2string(got, precision=3))
    print("   ref ", np.array2string(ref, precision=3))
    print("   rel ", np.array2string(rel, precision=2))
