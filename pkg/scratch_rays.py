import itertools
import numpy as np
from p2tau.monodromy import derived_params
from p2tau.corrections import _ray_integral

mp = derived_params(2j, 1j)
t = 2.0
target = 2j * mp.nu / 3 + mp.nu**2 / t
print("nu =", mp.nu, " target =", target)

A_EVEN = [0.0, -7 * np.pi / 8]
A_ODD = [-np.pi / 2, 3 * np.pi / 8]

results = []
for swap_e, swap_o, soff, sign in itertools.product(
        (0, 1), (0, 1), (-1, 0, 1), (1, -1)):
    a0, a2 = (A_EVEN[swap_e], A_EVEN[1 - swap_e])
    a1, a3 = (A_ODD[swap_o], A_ODD[1 - swap_o])
    table = [(0, (0 + soff) % 5, a0), (1, (1 + soff) % 5, a1),
             (2, (2 + soff) % 5, a2), (3, (3 + soff) % 5, a3)]
    try:
        tot10 = sum(_ray_integral(k, s, a, t, mp, 220, 10.0)
                    for k, s, a in table)
        tot12 = sum(_ray_integral(k, s, a, t, mp, 260, 12.0)
                    for k, s, a in table)
    except Exception as e:
        print(swap_e, swap_o, soff, sign, "FAIL", e)
        continue
    tot10 *= sign
    tot12 *= sign
    stab = abs(tot12 - tot10)
    err = abs(tot12 - target)
    results.append((err, stab, swap_e, swap_o, soff, sign, tot12))

results.sort()
for err, stab, swap_e, swap_o, soff, sign, tot in results[:12]:
    print(f"err={err:.3e} stab={stab:.3e} swapE={swap_e} swapO={swap_o} "
          f"soff={soff} sign={sign} tot={tot:.8f}")
