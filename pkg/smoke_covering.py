import numpy as np, math, cmath, time
import sys
sys.path.insert(0, "src")
from starcalc.core import TauPoint, window_grid
from starcalc.exponentials import quadratic_star_exponential
from starcalc.transform import (
    CoveringState,
    covering_integral,
    covering_evolution_residual,
    covering_theta_relation_residual,
    covering_monodromy,
    nonuniqueness_witness,
)
from starcalc.errors import DomainViolation

w = window_grid(n_re=9, n_im=3)

# s = 0 -> constant 1 for several ell
for ell in (1, 2, 3, 5):
    st = CoveringState.make(ell, 0.0, 0.0, 1.0)
    vals = covering_integral(st)(w)
    print(f"ell={ell} s=0:", np.max(np.abs(vals - 1.0)))

# ell = 1: linear exponential e^{i s w - s^2 tau / 4}
for tau in (1.0, 0.8 + 0.3j):
    s = 0.7
    st = CoveringState.make(1, s, 0.0, tau)
    vals = covering_integral(st)(w)
    ref = np.exp(1j * s * w - s * s * complex(tau) / 4.0)
    print(f"ell=1 tau={tau}:", np.max(np.abs(vals - ref)))

# ell = 2: quadratic star exponential at t = i s
for tau in (1.0, 1.2 - 0.2j):
    s = 0.35
    st = CoveringState.make(2, s, 0.0, tau)
    vals = covering_integral(st)(w)
    elem, _ = quadratic_star_exponential(1j * s, tau)
    ref = elem(w)
    print(f"ell=2 tau={tau}:", np.max(np.abs(vals - ref)))

# jets vs finite differences, ell = 3
st = CoveringState.make(3, 0.4, 0.3, TauPoint(1.0, -0.2))
ev = covering_integral(st)
h = 1e-4
for order in (1, 2):
    if order == 1:
        fd = (ev(w + h) - ev(w - h)) / (2 * h)
    else:
        fd = (ev(w + h) - 2 * ev(w) + ev(w - h)) / h**2
    print(f"ell=3 jet order {order}:", np.max(np.abs(ev(w, order) - fd)))

# evolution residual and theta relation
for ell in (1, 2, 3):
    st = CoveringState.make(ell, 0.3, 0.1, TauPoint(1.0, 0.1))
    r1 = covering_evolution_residual(st)
    r2 = covering_theta_relation_residual(st)
    print(f"ell={ell} evolution {r1:.3e} theta-relation {r2:.3e}")

# monodromy ell=3
t0 = time.time()
rep = covering_monodromy(3, 0.5, 1.0)
print(
    "monodromy ell=3:",
    rep.equal_at_2pi_ell,
    rep.distinct_at_2pi,
    f"equal {rep.equal_gap:.2e} distinct {rep.distinct_gap:.2e}",
    f"tau_cmp {rep.comparison_tau:.4f} steps {rep.steps_verified} [{time.time()-t0:.1f}s]",
)

# monodromy ell=9 with frozen sigma
t0 = time.time()
rep9 = covering_monodromy(9, 0.01, 1.0, fixed_sigma=True)
print(
    "monodromy ell=9 fixed:",
    rep9.equal_at_2pi_ell,
    rep9.distinct_at_2pi,
    f"equal {rep9.equal_gap:.2e} distinct {rep9.distinct_gap:.2e} [{time.time()-t0:.1f}s]",
)

# s = 0 degenerates: all sheets are the constant 1
rep0 = covering_monodromy(3, 0.0, 1.0)
print("monodromy ell=3 s=0 gaps:", rep0.equal_gap, rep0.distinct_gap)

# ell=4 cannot be compared on one admissible turn
try:
    covering_monodromy(4, 0.3, 1.0)
    print("ell=4: NO ERROR (bad)")
except DomainViolation as e:
    print("ell=4 raises:", e)

# nonuniqueness witness
t0 = time.time()
nu = nonuniqueness_witness(3, 1.0)
print(
    "nonuniqueness ell=3:",
    f"pairwise {nu.pairwise_gap:.3e} zero-gap {nu.zero_gap:.2e}",
    "evo", [f"{r:.1e}" for r in nu.evolution_residuals],
    f"[{time.time()-t0:.1f}s]",
)
