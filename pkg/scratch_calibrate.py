"""Dev-only calibration: assembly oracles + printed-value checks. Not shipped."""
import numpy as np
import time
from fracbc.glkernel import gl_coefficients, tail_sums, toeplitz_coefficients
from fracbc.structure import (
    BoundaryScheme, assemble_antireflective, assemble_antisymmetric,
    assemble_open, assemble_reflective, assemble_truncated, toeplitz_dense,
)


def oracle_full_wall(alpha, beta, m, rule):
    """Entrywise GL-sum bookkeeping with exterior reconstruction `rule`.

    rule(c, n) -> list of (index, coef) giving U_c in terms of interior U's,
    for any integer c (identity when 0 <= c <= n).
    """
    n = m - 1
    g = gl_coefficients(alpha, 2 * m + 5)
    A = np.zeros((m, m))

    def add(j, c, w):
        for idx, co in rule(c, n):
            A[j, idx] += w * co

    for j in range(m):
        # left derivative: sum_{k=0}^{j+1} g_k U_{j+1-k} - tail k=j+2..N+j+1
        for k in range(0, j + 2):
            add(j, j + 1 - k, g[k])
        for k in range(j + 2, n + j + 2):
            add(j, j + 1 - k, g[k])
        # weight left part
    A_left = A.copy()
    A[:] = 0
    for j in range(m):
        # right derivative: k=0..N-j+1 direct + tail k=N-j+2..2N-j+1
        for k in range(0, n - j + 2):
            add(j, j - 1 + k, g[k])
        for k in range(n - j + 2, 2 * n - j + 2):
            add(j, j - 1 + k, g[k])
    A_right = A.copy()
    return 0.5 * (1 + beta) * A_left + 0.5 * (1 - beta) * A_right


def rule_antisym(c, n):
    if 0 <= c <= n:
        return [(c, 1.0)]
    if c < 0:
        c2 = -c
        return rule_antisym(c2, n) and [(i, -w) for i, w in rule_antisym(c2, n)]
    c2 = 2 * n - c
    return [(i, -w) for i, w in rule_antisym(c2, n)]


def rule_reflective(c, n):
    if 0 <= c <= n:
        return [(c, 1.0)]
    if c < 0:
        return rule_reflective(-c, n)
    return rule_reflective(2 * n - c, n)


def rule_antirefl(c, n):
    if 0 <= c <= n:
        return [(c, 1.0)]
    if c < 0:
        inner = rule_antirefl(-c, n)
        return [(0, 2.0)] + [(i, -w) for i, w in inner]
    inner = rule_antirefl(2 * n - c, n)
    return [(n, 2.0)] + [(i, -w) for i, w in inner]


def rule_zero(c, n):
    if 0 <= c <= n:
        return [(c, 1.0)]
    return []


def check(name, A, B, tol=1e-12):
    err = np.max(np.abs(A - B))
    scale = max(1.0, np.max(np.abs(B)))
    status = "OK " if err <= tol * scale else "FAIL"
    print(f"{status} {name}: max abs diff {err:.3e}")
    return err <= tol * scale


# --- assembly vs brute-force oracles ---
m = 48
for alpha, beta in [(1.7, 0.0), (1.3, 0.4)]:
    check(f"antisym a={alpha} b={beta} m={m}",
          assemble_antisymmetric(alpha, beta, m).dense(),
          oracle_full_wall(alpha, beta, m, rule_antisym))
    check(f"antirefl a={alpha} b={beta} m={m}",
          assemble_antireflective(alpha, beta, m).dense(),
          oracle_full_wall(alpha, beta, m, rule_antirefl))
    check(f"reflective a={alpha} b={beta} m={m}",
          assemble_reflective(alpha, beta, m).dense(),
          oracle_full_wall(alpha, beta, m, rule_reflective))

# open: oracle with zero exterior and FULL sums (no wall cut) -> pure Toeplitz
def oracle_open(alpha, beta, m):
    g = gl_coefficients(alpha, 2 * m + 5)
    A_L = np.zeros((m, m))
    for j in range(m):
        for k in range(0, 2 * m):
            c = j + 1 - k
            if 0 <= c < m:
                A_L[j, c] += g[k]
    return 0.5 * (1 + beta) * A_L + 0.5 * (1 - beta) * A_L.T

check("open a=1.3 b=0.4 m=64", assemble_open(1.3, 0.4, 64).dense(), oracle_open(1.3, 0.4, 64))

# truncated: cut-at-N sums
def oracle_truncated(alpha, m, rule):
    n = m - 1
    g = gl_coefficients(alpha, 2 * m + 5)
    A = np.zeros((m, m))
    for j in range(m):
        for k in range(0, n + 1):
            for idx, co in rule(j + 1 - k, n):
                A[j, idx] += 0.5 * g[k] * co
            for idx, co in rule(j - 1 + k, n):
                A[j, idx] += 0.5 * g[k] * co
    return A

m = 32
check("trunc antisym a=1.6", assemble_truncated(BoundaryScheme.ANTISYMMETRIC_TRUNC, 1.6, m).dense(),
      oracle_truncated(1.6, m, rule_antisym), tol=1e-13)
check("trunc antirefl a=1.6", assemble_truncated(BoundaryScheme.ANTIREFLECTIVE_TRUNC, 1.6, m).dense(),
      oracle_truncated(1.6, m, rule_antirefl), tol=1e-13)

# paper display spot checks
alpha = 1.5
m = 10
n = m - 1
g = gl_coefficients(alpha, 2 * m + 5)
z, zt = tail_sums(g, n)
A2 = 2 * assemble_antisymmetric(alpha, 0.0, m).dense()
print("anti (0,1)*2 =", A2[0, 1], "expected -g_{2N} =", -g[2 * n])
AR2 = 2 * assemble_antireflective(alpha, 0.0, m).dense()
print("antiR (0,0)*2 =", AR2[0, 0], "expected", 2 * g[1] - g[2 * n + 1] + 2 * g[0] + z[1])
print("antiR (2,0)*2 =", AR2[2, 0], "expected g3 - g_{2N-1} + z3 =", g[3] - g[2 * n - 1] + z[3])
