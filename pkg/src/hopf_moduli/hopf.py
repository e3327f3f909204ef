"""Fixed geometry of a classical Hopf surface.

The surface is C^2 \\ {0} modulo (z1, z2) -> (mu z1, mu z2); its elliptic
fibration over P^1 has fibre T = C*/<mu>.  This module carries the fibre's
2-torsion (the four half-periods), the 2:1 quotient of the degree-0 Picard
torus to P^1 realized by the Weierstrass P-function in the multiplicative
coordinate t = e^(2 pi i z), and the three finite branch values of that
quotient (the fourth branch value is the point at infinity, image of t = 1).
"""

import functools
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import InvariantViolation, PreconditionError

WP_TOL = 1e-16


@dataclass(frozen=True)
class HopfParameter:
    """Contraction modulus mu (0 < |mu| < 1) and tau with mu = e^(2 pi i tau)."""

    mu: complex
    tau: complex

    @classmethod
    def from_mu(cls, mu):
        mu = complex(mu)
        if not 0.0 < abs(mu) < 1.0:
            raise PreconditionError("need 0 < |mu| < 1")
        tau = np.log(mu) / (2j * np.pi)
        return cls(mu, complex(tau))

    @classmethod
    def from_tau(cls, tau):
        tau = complex(tau)
        if tau.imag <= 0:
            raise PreconditionError("need Im tau > 0")
        mu = complex(np.exp(2j * np.pi * tau))
        return cls(mu, tau)

    def __post_init__(self):
        if not 0.0 < abs(self.mu) < 1.0:
            raise PreconditionError("need 0 < |mu| < 1")
        if abs(np.exp(2j * np.pi * self.tau) - self.mu) > 1e-12 * abs(self.mu):
            raise InvariantViolation("tau does not reproduce mu")


DEFAULT_HOPF = HopfParameter.from_tau(1j)


@dataclass(frozen=True)
class HalfPeriodSet:
    """Annulus representatives of the four 2-torsion classes of C*/<mu>."""

    points: tuple

    def __iter__(self):
        return iter(self.points)


@dataclass(frozen=True)
class BranchValues:
    """Finite branch values of the quotient to P^1; infinity is implicit.

    Ordering convention: e1 at z = 1/2 (t = -1), e2 at z = (1+tau)/2
    (t = -e^(pi i tau)), e3 at z = tau/2 (t = e^(pi i tau)).
    """

    e1: complex
    e2: complex
    e3: complex

    def __iter__(self):
        return iter((self.e1, self.e2, self.e3))


def annulus_representative(h, t):
    """Shift t by powers of mu into the fundamental annulus |mu| < |t| <= 1."""
    t = complex(t)
    if t == 0:
        raise PreconditionError("t = 0 is not a point of C*/<mu>")
    logt = math.log(abs(t))
    logmu = math.log(abs(h.mu))
    k = math.ceil(-logt / logmu - 1e-12)
    return t * h.mu**k


def half_periods(h):
    """The four 2-torsion points: 1, -1 and the two square roots of mu."""
    root = complex(np.exp(1j * np.pi * h.tau))
    pts = tuple(annulus_representative(h, t) for t in (1.0, -1.0, root, -root))
    return HalfPeriodSet(pts)


def quotient_map(h, t):
    """Value of the 2:1 map Pic^0(T) -> P^1 at t, i.e. the Weierstrass P-value.

    Invariant under t -> 1/t and t -> mu t; the trivial class t = 1 maps to
    infinity (returned as complex inf).
    """
    t = annulus_representative(h, t)
    if abs(t - 1.0) < 1e-14:
        return complex(np.inf, 0.0)
    return complex(_kernels.wp_value(t, h.mu, WP_TOL))


def quotient_map_derivative(h, t):
    """d/dt of quotient_map at an annulus point (series term-by-term)."""
    t = annulus_representative(h, t)
    mu = h.mu

    def dterm(u, dudt):
        return dudt * (1.0 + u) / (1.0 - u) ** 3

    acc = dterm(t, 1.0)
    q = mu
    small = 0
    for _ in range(512):
        term = dterm(q * t, q) + dterm(q / t, -q / t**2)
        acc += term
        small = small + 1 if abs(term) <= WP_TOL * (1.0 + abs(acc)) else 0
        if small >= 2:
            break
        q *= mu
    return (2j * np.pi) ** 2 * acc


@functools.lru_cache(maxsize=64)
def _branch_values_cached(mu, tau):
    h = HopfParameter(mu, tau)
    root = complex(np.exp(1j * np.pi * tau))
    e1 = quotient_map(h, -1.0)
    e2 = quotient_map(h, -root)
    e3 = quotient_map(h, root)
    scale = max(abs(e1), abs(e2), abs(e3))
    if abs(e1 + e2 + e3) > 1e-10 * max(scale, 1.0):
        raise InvariantViolation("branch values do not sum to zero")
    for a, b in ((e1, e2), (e1, e3), (e2, e3)):
        if abs(a - b) <= 1e-12 * max(scale, 1.0):
            raise InvariantViolation("branch values must be pairwise distinct")
    return BranchValues(e1, e2, e3)


def branch_values(h):
    """Images of the three nontrivial half-periods; e1 + e2 + e3 = 0."""
    return _branch_values_cached(h.mu, h.tau)


def quotient_fiber(h, w, tol=1e-9):
    """Annulus solutions of quotient_map(t) = w; two generically, one at a branch value.

    Newton iteration from a deterministic log-polar seed grid; used by the
    fibre-count invariants and exposed for diagnostics.
    """
    w = complex(w)
    radii = np.geomspace(abs(h.mu) ** 0.75, 1.0, 10)
    angles = np.linspace(0.0, 2.0 * np.pi, 24, endpoint=False)
    sols = []
    for r in radii:
        for a in angles:
            t = r * np.exp(1j * a)
            for _ in range(40):
                if abs(t - 1.0) < 1e-12 or abs(t - h.mu) < 1e-12:
                    break
                val = _kernels.wp_value(t, h.mu, WP_TOL) - w
                der = quotient_map_derivative(h, t)
                if der == 0:
                    break
                step = val / der
                t = t - step
                if abs(t) < abs(h.mu) * 0.5 or abs(t) > 2.0:
                    break
                if abs(step) < 1e-14 * (1.0 + abs(t)):
                    break
            else:
                continue
            if abs(t) < abs(h.mu) * 0.5 or abs(t) > 2.0 or abs(t - 1.0) < 1e-10:
                continue
            if abs(_kernels.wp_value(t, h.mu, WP_TOL) - w) <= tol * (1.0 + abs(w)):
                t = annulus_representative(h, t)
                # compare mod mu (annulus boundary fuzz) and with a radius
                # matching the sqrt(tol) convergence at double roots
                dup = any(
                    abs(t * h.mu**k - s) <= 10.0 * tol**0.5 * abs(s)
                    for s in sols
                    for k in (-1, 0, 1)
                )
                if not dup:
                    sols.append(t)
    return sorted(sols, key=lambda s: (round(abs(s), 10), round(np.angle(s), 10)))


def j_from_tau(tau, terms=400, tol=1e-15):
    """Klein j-invariant by the Eisenstein q-expansion (E4, E6)."""
    tau = complex(tau)
    if tau.imag <= 0:
        raise PreconditionError("need Im tau > 0")
    q = np.exp(2j * np.pi * tau)
    e4 = 1.0 + 0j
    e6 = 1.0 + 0j
    qn = q
    for n in range(1, terms + 1):
        s3 = sum(d**3 for d in range(1, n + 1) if n % d == 0)
        s5 = sum(d**5 for d in range(1, n + 1) if n % d == 0)
        t4 = 240.0 * s3 * qn
        t6 = -504.0 * s5 * qn
        e4 += t4
        e6 += t6
        if abs(t4) < tol and abs(t6) < tol:
            break
        qn *= q
    num = e4**3
    den = num - e6**2
    return complex(1728.0 * num / den)
