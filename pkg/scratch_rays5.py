import numpy as np
from p2tau.monodromy import derived_params
from p2tau.corrections import _ray_integral

mp = derived_params(2j, 1j)
t = 2.0
target = 2j * mp.nu / 3 + mp.nu**2 / t
print("target =", target)

DIRS = {0: 0.0, 1: 3 * np.pi / 8, 2: np.pi - 0.12, 3: -5 * np.pi / 8}

vals = {}
for k in range(4):
    for s in range(5):
        try:
            v10 = _ray_integral(k, s, DIRS[k], t, mp, 220, 10.0)
            v12 = _ray_integral(k, s, DIRS[k], t, mp, 260, 12.0)
            stab = abs(v12 - v10)
            flag = "  <-- stable" if stab < 1e-6 else ""
            if stab < 1e-6:
                vals[(k, s)] = v12
            print(f"k={k} s={s}  v={v12:+.8f}  stab={stab:.2e}{flag}")
        except Exception as e:
            print(f"k={k} s={s} FAIL {type(e).__name__}: {e}")
    print()

print("target  =", target)
for soff, sign in ((0, 1), (0, -1), (-1, 1), (-1, -1)):
    try:
        tot = sign * sum(vals[(k, (k + soff) % 5)] for k in range(4))
        print(f"soff={soff} sign={sign}: sum={tot:+.8f} "
              f"err={abs(tot - target):.2e}")
    except KeyError as e:
        print(f"soff={soff} sign={sign}: missing stable ray {e}")
