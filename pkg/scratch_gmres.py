"""Dev-only: GMRES iteration-count calibration vs printed counts."""
import numpy as np
import time
from fracbc.structure import assemble_antisymmetric, assemble_antireflective, ShiftedOperator
from fracbc.precond import from_name, lift
from fracbc.krylov import GmresConfig, gmres

def run_cell(family, alpha, m, k, theta, pname, rhs="ones", seed=0, tol=1e-6):
    asm = assemble_antisymmetric if family == "anti" else assemble_antireflective
    op = asm(alpha, 0.0, m)
    mu = k * (m - 1) ** (alpha - 1)
    mu_eff = mu * theta
    A = ShiftedOperator(op, 1.0, mu_eff)
    if pname == "none":
        P = None
    else:
        t = op.meta["t"]
        if pname == "tau-opt":
            col = t[:m].copy()
            from fracbc.structure import _ToeplitzPart
            tp = _ToeplitzPart(col, col, 1.0)
            def apply_block(B):
                out = np.empty_like(B)
                for i in range(B.shape[1]):
                    out[:, i] = tp.apply(B[:, i])
                return out
            P = from_name(pname, t, m, apply_toeplitz=apply_block)
        else:
            P = from_name(pname, t, m)
        P = lift(P, 1.0, mu_eff)
    if rhs == "ones":
        xstar = np.ones(m)
    else:
        xstar = np.random.default_rng(seed).uniform(0.0, 1.0, m)
    b = A.apply(xstar)
    rep = gmres(A, b, P, GmresConfig(tol=tol))
    return rep.iterations, rep.converged

cells = [
    # (family, alpha, m, k, theta, precond, rhs, expected)
    ("anti", 1.2, 1000, 1, 1.0, "none", "ones", 21),
    ("anti", 1.2, 1000, 1, 1.0, "strang", "ones", 5),
    ("anti", 1.2, 1000, 1, 1.0, "circ-opt", "ones", 5),
    ("anti", 1.2, 1000, 1, 1.0, "tau", "ones", 3),
    ("anti", 1.2, 1000, 1, 1.0, "tau-opt", "ones", 3),
    ("anti", 1.2, 1000, 1, 0.5, "none", "ones", 15),
    ("anti", 1.5, 1000, 1, 1.0, "none", "ones", 63),
    ("anti", 1.8, 1000, 1, 1.0, "none", "ones", 172),
    ("anti", 1.8, 1000, 1, 1.0, "circ-opt", "ones", 7),
    ("anti", 1.5, 2000, 1, 1.0, "none", "ones", 74),
    ("anti", 1.2, 1000, 100, 1.0, "none", "ones", 167),
    ("anti", 1.8, 1000, 100, 1.0, "circ-opt", "ones", 20),
    ("antiR", 1.2, 1000, 1, 1.0, "none", "ones", 16),
    ("antiR", 1.8, 1000, 1, 1.0, "none", "ones", 191),
    ("antiR", 1.8, 1000, 1, 1.0, "circ-opt", "ones", 11),
    ("antiR", 1.8, 1000, 1, 1.0, "tau", "ones", 5),
    ("antiR", 1.2, 1000, 100, 1.0, "none", "ones", 197),
    ("antiR", 1.2, 1000, 1, 1.0, "none", "random", 21),
    ("anti", 1.5, 1000, 1, 1.0, "none", "random", 54),
    ("anti", 1.8, 8000, 100, 1.0, "strang", "ones", 4),
]

for fam, alpha, m, k, theta, pn, rhs, exp in cells:
    t0 = time.time()
    it, conv = run_cell(fam, alpha, m, k, theta, pn, rhs)
    ok = "OK " if abs(it - exp) <= 2 else "FAIL"
    print(f"{ok} {fam:5s} a={alpha} m={m} k={k} th={theta} {pn:9s} {rhs:6s}: got {it} expect {exp}  ({time.time()-t0:.2f}s, conv={conv})")
