"""Fit elementary normalization freedom against the JMO sigma equation.

S_model(x) = S_assembled(x; c=2) + A + B*(-1/x) + C*(-x)^{1/2}
  A      : tau -> tau * e^{A x}
  B      : tau -> tau * t^{(2/3)B}   (log t = (3/2) log(-x);  d/dx of
           beta log(-x) is beta/x = -beta * (-1/x))   [c family lives here:
           delta c = -1 shifts S by +(3/2) nu^2 (-1/x) ... sign checked below]
  C      : tau -> tau * e^{mu t},  d/dx mu t = -(3/2) mu (-x)^{1/2}
Residual: JMO(S) - 1/16 over interior grid points, least squares in
(Re, Im) of A, B, C.
"""
import numpy as np
import warnings
warnings.filterwarnings("ignore")
from scipy.optimize import least_squares

from p2tau.monodromy import derived_params
from p2tau.cauchy import build_contour
from p2tau.fredholm import assemble_kernel, log_det
from p2tau.corrections import calF
import os

mp = derived_params(2j, 1j)
nu = mp.nu
CACHE = "scratch_sigma_rows.npz"

if os.path.exists(CACHE):
    rows = np.load(CACHE)["rows"]
else:
    N_DET, H_T = 150, 0.01

    def logdet_at(t):
        op = assemble_kernel(t, mp, build_contour(N_DET, 4.0, 0.0),
                             build_contour(2 * N_DET, 4.0, 0.1))
        return log_det(op, estimate_error=False).log_det

    x0 = -2.2 ** (2.0 / 3.0)
    xs = x0 + 0.03 * np.arange(-6, 7)
    out = []
    for x in xs:
        t = (-x) ** 1.5
        dld = (logdet_at(t + H_T) - logdet_at(t - H_T)) / (2 * H_T)
        fc = calF(t, mp, n_nodes=220, _error_check=False)
        out.append((x, t, dld, fc.total))
        print(f"x={x:+.4f} done", flush=True)
    rows = np.array(out, dtype=complex)
    np.savez(CACHE, rows=rows)

xs = np.real(rows[:, 0])
ts = np.real(rows[:, 1])
x0 = xs[len(xs) // 2]
bracket2 = 4j * nu / 3 + 2 * nu ** 2 / ts
S_base = -1.5 * ts ** (1.0 / 3.0) * (rows[:, 2] + rows[:, 3] - bracket2)


def jmo_residuals(S_vals):
    coef = np.polyfit(xs - x0, S_vals, 8)
    p = np.poly1d(coef)
    res = []
    for xx in xs[3:-3]:
        u = xx - x0
        s0, s1, s2 = p(u), p.deriv(1)(u), p.deriv(2)(u)
        res.append(s2 ** 2 + 4 * s1 ** 3 + 2 * xx * s1 ** 2
                   - 2 * s0 * s1 - 1.0 / 16.0)
    return np.array(res)


def model(params):
    A = params[0] + 1j * params[1]
    B = params[2] + 1j * params[3]
    C = params[4] + 1j * params[5]
    return S_base + A + B * (-1.0 / xs) + C * np.sqrt(-xs)


def objective(params):
    r = jmo_residuals(model(params))
    return np.concatenate([np.real(r), np.imag(r)])


best = None
rng = np.random.default_rng(0)
for trial in range(40):
    p0 = rng.normal(scale=0.3, size=6)
    sol = least_squares(objective, p0, method="lm", max_nfev=4000)
    if best is None or sol.cost < best.cost:
        best = sol
A = best.x[0] + 1j * best.x[1]
B = best.x[2] + 1j * best.x[3]
C = best.x[4] + 1j * best.x[5]
print(f"residual norm: {np.sqrt(2 * best.cost):.3e}")
print(f"A = {A:+.6f}")
print(f"B = {B:+.6f}")
print(f"C = {C:+.6f}")
# interpret B: tau extra factor t^gamma with gamma = (2/3) B ... and the
# bracket-c interpretation: S(c) - S(2) = 1.5 * (2 - c) nu^2 / t^(2/3)
#                                      = 1.5 (2 - c) nu^2 (-1/x)
print(f"nu^2 = {nu**2:+.6f}; B / (1.5 nu^2) = {B / (1.5 * nu**2):+.6f}"
      f"  -> c_eff = 2 - B/(1.5 nu^2)")
print(f"C / nu = {C / nu:+.6f}   (linear-term freedom in units of nu)")
print(f"baseline (A=B=C=0) residual norm: "
      f"{np.linalg.norm(jmo_residuals(S_base)):.3e}")
