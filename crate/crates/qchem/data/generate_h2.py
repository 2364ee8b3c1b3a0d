"""Minimal-basis (STO-3G) H2 integrals in the spin-orbital text format.

Spin-orbitals are ordered sigma_g alpha, sigma_g beta, sigma_u alpha,
sigma_u beta, so the Hartree-Fock determinant is occupations 1100.
Two-electron entries are written for the operator
    1/2 sum h_pqrs a+_p a+_q a_r a_s,   h_pqrs = <pq|sr> = (ps|qr).

Usage: python3 generate_h2.py R1 R2 ...   (bond lengths in bohr)
"""
import itertools
import sys

import numpy as np
from scipy.special import erf

EXPONENTS = np.array([3.42525091, 0.62391373, 0.16885540])
COEFFS = np.array([0.15432897, 0.53532814, 0.44463454])


def norm(a):
    return (2.0 * a / np.pi) ** 0.75


def boys0(t):
    return 1.0 if t < 1e-12 else 0.5 * np.sqrt(np.pi / t) * erf(np.sqrt(t))


def primitives(center):
    return [(a, c * norm(a), center) for a, c in zip(EXPONENTS, COEFFS)]


def overlap(p, q):
    (a, ca, A), (b, cb, B) = p, q
    r2 = (A - B) ** 2
    return ca * cb * (np.pi / (a + b)) ** 1.5 * np.exp(-a * b / (a + b) * r2)


def kinetic(p, q):
    (a, ca, A), (b, cb, B) = p, q
    mu = a * b / (a + b)
    r2 = (A - B) ** 2
    return ca * cb * mu * (3.0 - 2.0 * mu * r2) * (np.pi / (a + b)) ** 1.5 * np.exp(-mu * r2)


def attraction(p, q, C):
    (a, ca, A), (b, cb, B) = p, q
    g = a + b
    P = (a * A + b * B) / g
    return -ca * cb * 2.0 * np.pi / g * np.exp(-a * b / g * (A - B) ** 2) * boys0(g * (P - C) ** 2)


def repulsion(p, q, r, s):
    (a, ca, A), (b, cb, B), (c, cc, C), (d, cd, D) = p, q, r, s
    g1, g2 = a + b, c + d
    P, Q = (a * A + b * B) / g1, (c * C + d * D) / g2
    pref = 2.0 * np.pi ** 2.5 / (g1 * g2 * np.sqrt(g1 + g2))
    return (ca * cb * cc * cd * pref * np.exp(-a * b / g1 * (A - B) ** 2 - c * d / g2 * (C - D) ** 2)
            * boys0(g1 * g2 / (g1 + g2) * (P - Q) ** 2))


def contracted(f, basis, *rest):
    idx = range(len(basis))
    out = np.zeros((len(basis),) * 2)
    for i, j in itertools.product(idx, idx):
        out[i, j] = sum(f(p, q, *rest) for p in basis[i] for q in basis[j])
    return out


def integrals(R):
    centers = [0.0, R]
    basis = [primitives(c) for c in centers]
    S = contracted(overlap, basis)
    T = contracted(kinetic, basis)
    V = sum(contracted(attraction, basis, C) for C in centers)
    eri = np.zeros((2, 2, 2, 2))
    for i, j, k, l in itertools.product(range(2), repeat=4):
        eri[i, j, k, l] = sum(repulsion(p, q, r, s) for p in basis[i] for q in basis[j]
                              for r in basis[k] for s in basis[l])
    s = S[0, 1]
    C = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt([2 * (1 + s), 2 * (1 - s)])
    h_mo = C.T @ (T + V) @ C
    eri_mo = np.einsum("ip,jq,kr,ls,ijkl->pqrs", C, C, C, C, eri)
    M = 4
    h1 = np.zeros((M, M))
    h2 = np.zeros((M, M, M, M))
    for p, q in itertools.product(range(M), repeat=2):
        if p % 2 == q % 2:
            h1[p, q] = h_mo[p // 2, q // 2]
    for p, q, r, s in itertools.product(range(M), repeat=4):
        if p % 2 == s % 2 and q % 2 == r % 2:
            h2[p, q, r, s] = eri_mo[p // 2, s // 2, q // 2, r // 2]
    return h1, h2, 1.0 / R


def fci_energy(h1, h2, const):
    M = h1.shape[0]
    dim = 1 << M

    def apply(ops, state):
        # ops: list of (mode, create?) applied right to left
        amp, x = 1.0, state
        for mode, create in reversed(ops):
            occupied = x >> mode & 1
            if occupied == create:
                return 0.0, 0
            sign = (-1) ** bin(x & ((1 << mode) - 1)).count("1")
            amp *= sign
            x ^= 1 << mode
        return amp, x

    H = np.zeros((dim, dim))
    for b in range(dim):
        H[b, b] += const
        for p, q in itertools.product(range(M), repeat=2):
            if h1[p, q]:
                a, x = apply([(p, 1), (q, 0)], b)
                H[x, b] += a * h1[p, q]
        for p, q, r, s in itertools.product(range(M), repeat=4):
            if h2[p, q, r, s]:
                a, x = apply([(p, 1), (q, 1), (r, 0), (s, 0)], b)
                H[x, b] += 0.5 * a * h2[p, q, r, s]
    return np.linalg.eigvalsh(H)[0]


def write(R, path):
    h1, h2, const = integrals(R)
    with open(path, "w") as f:
        f.write(f"# H2 STO-3G, R = {R} bohr, FCI energy {fci_energy(h1, h2, const):.12f} hartree\n")
        f.write("M 4\n")
        f.write(f"const {const:.17g}\n")
        for p, q in itertools.product(range(4), repeat=2):
            if abs(h1[p, q]) > 1e-14:
                f.write(f"1e {p + 1} {q + 1} {h1[p, q]:.17g}\n")
        for p, q, r, s in itertools.product(range(4), repeat=4):
            if abs(h2[p, q, r, s]) > 1e-14:
                f.write(f"2e {p + 1} {q + 1} {r + 1} {s + 1} {h2[p, q, r, s]:.17g}\n")


if __name__ == "__main__":
    for arg in sys.argv[1:]:
        R = float(arg)
        write(R, f"h2_sto3g_r{R:.3f}.txt")
