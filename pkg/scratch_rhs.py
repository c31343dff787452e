"""Dev-only: probe RHS protocols for the iteration-count tables."""
import numpy as np
from fracbc.structure import assemble_antisymmetric, assemble_antireflective, ShiftedOperator
from fracbc.precond import from_name, lift
from fracbc.krylov import GmresConfig, gmres

def count(family, alpha, m, k, theta, pname, mode, seed=0):
    asm = assemble_antisymmetric if family == "anti" else assemble_antireflective
    op = asm(alpha, 0.0, m)
    mu_eff = k * (m - 1) ** (alpha - 1) * theta
    A = ShiftedOperator(op, 1.0, mu_eff)
    P = None
    if pname != "none":
        P = lift(from_name(pname, op.meta["t"], m), 1.0, mu_eff)
    x = np.arange(m) / (m - 1)
    if mode == "xstar_ones":
        b = A.apply(np.ones(m))
    elif mode == "b_ones":
        b = np.ones(m)
    elif mode == "xstar_poly":
        b = A.apply((x * (1 - x)) ** 4 * 256.0)
    elif mode == "b_poly":
        b = (x * (1 - x)) ** 4 * 256.0
    elif mode == "xstar_sin":
        b = A.apply(np.sin(np.pi * x))
    elif mode == "b_sin":
        b = np.sin(np.pi * x)
    elif mode == "xstar_rand":
        b = A.apply(np.random.default_rng(seed).uniform(0, 1, m))
    rep = gmres(A, b, P, GmresConfig(tol=1e-6))
    return rep.iterations

cells = [
    ("anti", 1.2, 1, 1.0, "none", 21),
    ("anti", 1.5, 1, 1.0, "none", 63),
    ("anti", 1.8, 1, 1.0, "none", 172),
    ("anti", 1.2, 100, 1.0, "none", 167),
    ("anti", 1.5, 100, 1.0, "none", 359),
    ("anti", 1.8, 100, 1.0, "circ-opt", 20),
    ("anti", 1.8, 100, 1.0, "none", 705),
    ("antiR", 1.2, 1, 1.0, "none", 16),
    ("antiR", 1.5, 1, 1.0, "none", 57),
    ("antiR", 1.8, 1, 1.0, "none", 191),
    ("antiR", 1.2, 100, 1.0, "none", 197),
    ("antiR", 1.8, 100, 1.0, "none", 846),
    ("antiR", 1.8, 1, 1.0, "circ-opt", 11),
    ("anti", 1.2, 1, 0.5, "none", 15),
    ("antiR", 1.2, 1, 0.5, "none", 11),
]
modes = ["xstar_ones", "b_ones", "xstar_poly", "b_poly", "xstar_sin", "b_sin"]
m = 1000
hdr = f"{'cell':42s}" + "".join(f"{mo:>12s}" for mo in modes) + f"{'expect':>8s}"
print(hdr)
for fam, alpha, k, th, pn, exp in cells:
    row = f"{fam:5s} a={alpha} k={k:<3d} th={th} {pn:9s}"
    vals = [count(fam, alpha, m, k, th, pn, mo) for mo in modes]
    print(f"{row:42s}" + "".join(f"{v:12d}" for v in vals) + f"{exp:8d}")
