import numpy as np
from p2tau.monodromy import derived_params
from p2tau.corrections import _ray_integral

mp = derived_params(2j, 1j)
t = 2.0
target = 2j * mp.nu / 3 + mp.nu**2 / t
print("target =", target)

DIRS = {0: 0.0, 1: -np.pi / 2, 2: -7 * np.pi / 8, 3: 3 * np.pi / 8}

# per-ray: every sector choice, stability between zeta_max 10 and 12
for k in range(4):
    for s in range(5):
        try:
            v10 = _ray_integral(k, s, DIRS[k], t, mp, 220, 10.0)
            v12 = _ray_integral(k, s, DIRS[k], t, mp, 260, 12.0)
            stab = abs(v12 - v10)
            flag = "  <-- stable" if stab < 1e-6 else ""
            print(f"k={k} s={s} a={DIRS[k]:+.3f}  v={v12:+.6f}  "
                  f"stab={stab:.2e}{flag}")
        except Exception as e:
            print(f"k={k} s={s} FAIL {type(e).__name__}")
    print()
