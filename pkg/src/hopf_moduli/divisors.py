"""Bidegree-(n,1) graph divisors on P^1 x P^1 and their spectral curves.

A divisor {A(x) y0 + B(x) y1 = 0} with deg A = deg B = n is the graph of the
degree-n map x -> [-B(x) : A(x)] away from common roots of (A, B); common
roots are vertical components ("jumps").  For a jump-free divisor the branch
polynomial of the associated double cover is

    P = A * (B + e1 A) * (B + e2 A) * (B + e3 A),

degree 4n, whose roots sit over the four branch values {e1, e2, e3, inf} of
the quotient of the Picard torus.
"""

import enum
from dataclasses import dataclass

import numpy as np

from . import _kernels, forms
from .errors import InvariantViolation, PreconditionError
from .forms import BinaryForm, ProjectiveRoot
from .hopf import branch_values

# scale-invariant |disc| cutoff: double-precision noise floor with margin
SMOOTH_MARGIN = 1e-12


@dataclass(frozen=True)
class GraphDivisor:
    """Pair of degree-n forms (A, B) up to joint scale; n is the bundle's c2."""

    n: int
    A: BinaryForm
    B: BinaryForm

    def __post_init__(self):
        if self.A.degree != self.n or self.B.degree != self.n:
            raise InvariantViolation("A and B must both have degree n")

    @classmethod
    def from_coefficients(cls, a_coeffs, b_coeffs):
        a = BinaryForm.from_coefficients(a_coeffs)
        b = BinaryForm.from_coefficients(b_coeffs)
        if a.degree != b.degree:
            raise PreconditionError("A and B must have equal degree")
        return cls(a.degree, a, b)

    def coefficient_vector(self):
        """Canonical affine representative in C^(2n+2): unit norm, dominant
        coordinate rotated positive real (kills the projective ambiguity)."""
        v = np.concatenate([self.A.full_coeffs, self.B.full_coeffs])
        v = v / np.linalg.norm(v)
        i = int(np.argmax(np.abs(v)))
        phase = v[i] / abs(v[i])
        return v * np.conj(phase)

    @classmethod
    def from_vector(cls, n, vec):
        vec = np.asarray(vec, dtype=complex)
        if vec.size != 2 * n + 2:
            raise PreconditionError("coefficient vector must have length 2n+2")
        return cls.from_coefficients(vec[: n + 1], vec[n + 1 :])

    def same_point(self, other, tol=1e-9):
        return bool(
            np.linalg.norm(self.coefficient_vector() - other.coefficient_vector())
            <= tol
        )


@dataclass(frozen=True)
class StratumReport:
    """Jump count k (with multiplicity), jump locations, and the degree n-k
    jump-free residual divisor."""

    k: int
    jumps: tuple
    residual: GraphDivisor

    def __post_init__(self):
        if sum(r.multiplicity for r in self.jumps) != self.k:
            raise InvariantViolation("jump multiplicities must sum to k")


class FiberKind(enum.Enum):
    TYPE_I = "I"
    TYPE_II = "II"
    TYPE_III = "III"
    IRREGULAR_I = "irregular-I"


@dataclass(frozen=True)
class FiberType:
    """Restriction type of the represented bundle over one base point."""

    kind: FiberKind
    value: complex | None = None  # quotient value for types I/II
    multiplicity: int = 0  # jump order (III) or tangency order (irregular)


@dataclass(frozen=True)
class SpectralCurve:
    """Double cover y^2 = P(x) attached to a jump-free divisor."""

    n: int
    branch_form: BinaryForm
    branch_points: tuple
    smooth: bool
    margin: float

    @property
    def genus(self):
        return 2 * self.n - 1

    def __post_init__(self):
        if self.branch_form.degree != 4 * self.n:
            raise InvariantViolation("branch polynomial must have degree 4n")
        total = sum(r.multiplicity for r in self.branch_points)
        if total != 4 * self.n:
            raise InvariantViolation("branch multiplicities must sum to 4n")


def stratify(d):
    """Jump stratum data: k = deg gcd(A,B), jump roots, coprime residual."""
    g = forms.gcd(d.A, d.B)
    k = g.degree
    if k == 0:
        return StratumReport(0, (), d)
    jumps = tuple(forms.roots(g))
    res_a = forms.divide(d.A, g)
    res_b = forms.divide(d.B, g)
    residual = GraphDivisor(d.n - k, res_a, res_b)
    if forms.gcd(res_a, res_b).degree != 0:
        raise InvariantViolation("residual forms failed to be coprime")
    return StratumReport(k, jumps, residual)


def is_stable_witness(d):
    """True iff the divisor has no jumps (a sufficient stability certificate)."""
    return stratify(d).k == 0


def branch_form(d, h):
    """The degree-4n branch polynomial A * prod_j (B + e_j A)."""
    e = branch_values(h)
    p = d.A
    for ej in e:
        p = p.multiply(d.B.add(d.A.scaled(ej)))
    return p


def margin_of_form(p, min_gap=None):
    """Scale-invariant regularity margin of a branch form.

    The raw quantity |disc(p)| / ||p||^(2(d-1)) is homogeneity-normalized but
    its typical size collapses with the degree (medians 1e-17 at degree 8,
    1e-41 at degree 16 for unit Gaussian coefficients), so the degree-uniform
    margin reported here is its 2(d-1)-th root: an O(root-gap) number for
    generic forms, 0 exactly on forms with a repeated root.  Snapped to 0
    below the smoothness cutoff and whenever `min_gap` (chordal separation of
    the roots, if the caller knows it) is inside the clustering radius.
    """
    if min_gap is not None and min_gap < forms.CLUSTER_RADIUS:
        return 0.0
    lm = _kernels.disc_log_abs(p.coeffs)
    if lm == -np.inf:
        return 0.0
    rooted = float(np.exp(lm / (2.0 * (p.degree - 1))))
    return rooted if rooted > SMOOTH_MARGIN else 0.0


def _min_root_gap(points):
    gap = np.inf
    pts = list(points)
    for i, p in enumerate(pts):
        if p.multiplicity >= 2:
            return 0.0
        for q in pts[i + 1 :]:
            gap = min(gap, p.chordal(q))
    return gap


def regularity_margin(d, h):
    """Distance-to-irregularity margin of the branch polynomial; 0 exactly
    when the divisor has a jump or its spectral curve is singular."""
    if forms.gcd(d.A, d.B).degree > 0:
        return 0.0
    p = branch_form(d, h)
    return margin_of_form(p, min_gap=_min_root_gap(forms.roots(p)))


def is_regular(d, h):
    """No jumps and a smooth spectral curve, at the documented cutoff."""
    return regularity_margin(d, h) > 0.0


def spectral_curve(d, h):
    """Spectral data of a jump-free divisor; raises on vertical components."""
    rep = stratify(d)
    if rep.k > 0:
        raise PreconditionError("vertical component present")
    p = branch_form(d, h)
    pts = tuple(forms.roots(p))
    margin = margin_of_form(p, min_gap=_min_root_gap(pts))
    return SpectralCurve(
        n=d.n,
        branch_form=p,
        branch_points=pts,
        smooth=margin > 0.0,
        margin=margin,
    )


def _match_multiplicity(x, form, tol=1e-8):
    for r in forms.roots(form):
        if x.chordal(r) <= tol:
            return r.multiplicity
    return 0


def fiber_type(d, h, x, tol=1e-8):
    """Restriction type over the base point x.

    Jumps are type III; base points mapping onto a branch value give type II
    (simple) or the irregular type (tangent, i.e. local multiplicity >= 2);
    everything else is the split type I.
    """
    if not isinstance(x, ProjectiveRoot):
        x = ProjectiveRoot.from_pair(x[0], x[1])
    g = forms.gcd(d.A, d.B)
    if g.degree > 0:
        mult = _match_multiplicity(x, g, tol)
        if mult > 0:
            return FiberType(FiberKind.TYPE_III, None, mult)
    av = d.A(x.x0, x.x1)
    bv = d.B(x.x0, x.x1)
    w = ProjectiveRoot.from_pair(-bv, av)
    e = branch_values(h)
    factors = [d.A] + [d.B.add(d.A.scaled(ej)) for ej in e]
    targets = [ProjectiveRoot(1.0, 0.0)] + [
        ProjectiveRoot.from_pair(ej, 1.0) for ej in e
    ]
    for factor, target in zip(factors, targets):
        if w.chordal(target) <= tol:
            mult = _match_multiplicity(x, factor, tol)
            value = target.affine
            if mult >= 2:
                return FiberType(FiberKind.IRREGULAR_I, value, mult)
            return FiberType(FiberKind.TYPE_II, value, max(mult, 1))
    return FiberType(FiberKind.TYPE_I, complex(w.affine), 0)
