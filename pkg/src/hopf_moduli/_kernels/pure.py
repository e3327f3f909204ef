"""Pure-numpy fallback for the hot kernels.

Coefficient layout everywhere: descending, c[k] multiplies x0^(d-k) * x1^k,
so c[0] is the leading coefficient of the dehomogenization p(z) = f(z, 1).
"""

import numpy as np

BACKEND_NAME = "pure"


def polymul(a, b):
    return np.convolve(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def sylvester_det(f, g):
    """Resultant of two binary forms at their formal degrees len-1."""
    f = np.asarray(f, dtype=complex)
    g = np.asarray(g, dtype=complex)
    m = f.size - 1
    n = g.size - 1
    if m + n == 0:
        return complex(1.0)
    s = np.zeros((m + n, m + n), dtype=complex)
    for i in range(n):
        s[i, i : i + m + 1] = f
    for i in range(m):
        s[n + i, i : i + n + 1] = g
    return complex(np.linalg.det(s))


def _partials(p):
    p = np.asarray(p, dtype=complex)
    d = p.size - 1
    k = np.arange(d + 1)
    fx0 = (d - k[:-1]) * p[:-1]
    fx1 = k[1:] * p[1:]
    return fx0, fx1


def disc_log_abs(p):
    """log|disc| of a binary form, computed from the two partial derivatives.

    Uses Res(f_x0, f_x1) = (-1)^(d(d-1)/2) * d^(d-2) * disc(f); the log-domain
    pivot product keeps huge/tiny discriminants representable.
    """
    p = np.asarray(p, dtype=complex)
    d = p.size - 1
    fx0, fx1 = _partials(p)
    m = n = d - 1
    s = np.zeros((m + n, m + n), dtype=complex)
    for i in range(n):
        s[i, i : i + m + 1] = fx0
    for i in range(m):
        s[n + i, i : i + n + 1] = fx1
    sign, logdet = np.linalg.slogdet(s)
    if sign == 0:
        return -np.inf
    return float(logdet - (d - 2) * np.log(d))


def wp_value(t, mu, tol=1e-16):
    """Weierstrass P at the annulus point t for the lattice of C*/<mu>.

    Rational q-power series in t with nome mu; caller must pass t inside
    |mu| < |t| <= 1. Truncates once two consecutive terms fall below tol.
    """
    t = complex(t)
    mu = complex(mu)

    def cterm(u):
        return u / (1.0 - u) ** 2

    acc = 1.0 / 12.0 + cterm(t)
    q = mu
    small = 0
    for _ in range(512):
        term = cterm(q * t) + cterm(q / t) - 2.0 * cterm(q)
        acc += term
        small = small + 1 if abs(term) <= tol * (1.0 + abs(acc)) else 0
        if small >= 2:
            break
        q *= mu
    return (2j * np.pi) ** 2 * acc


def branch_coeffs(a, b, e1, e2, e3):
    """Coefficients of the degree-4n branch polynomial A * prod(B + e_j A)."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    p = a
    for e in (e1, e2, e3):
        p = np.convolve(p, b + e * a)
    return p


def margin_scan(a0, b0, a1, b1, e1, e2, e3, ts):
    """Degree-uniform regularity margin |disc(p/||p||)|^(1/(2(d-1))) of the
    branch polynomial along a coefficient segment (no root-gap snapping)."""
    a0 = np.asarray(a0, dtype=complex)
    b0 = np.asarray(b0, dtype=complex)
    a1 = np.asarray(a1, dtype=complex)
    b1 = np.asarray(b1, dtype=complex)
    out = np.empty(len(ts), dtype=float)
    for i, t in enumerate(ts):
        a = (1.0 - t) * a0 + t * a1
        b = (1.0 - t) * b0 + t * b1
        p = branch_coeffs(a, b, e1, e2, e3)
        nrm = np.linalg.norm(p)
        if nrm == 0.0:
            out[i] = 0.0
            continue
        lm = disc_log_abs(p / nrm)
        d = p.size - 1
        out[i] = 0.0 if lm == -np.inf else float(np.exp(lm / (2.0 * (d - 1))))
    return out
