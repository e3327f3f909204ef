"""Binary forms (homogeneous polynomials in two variables) over C.

Coefficient layout is descending: c[k] multiplies x0^(d-k) * x1^k, so c[0]
is the leading coefficient of the dehomogenization p(z) = f(z, 1) and a zero
c[0] means the point [1:0] lies on the form's zero divisor.

Forms are stored unit-normalized (coefficient 2-norm 1) with the original
scale kept separately; when the caller supplied exact Gaussian-integer
coefficients these are retained verbatim so gcd can run exactly.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import InvariantViolation, PreconditionError

TOL_ROOT = 1e-10
TOL_GCD = 1e-10
CLUSTER_RADIUS = 1e-6


def _canonical_pair(x0, x1):
    """Unit-normalize [x0:x1] and rotate the dominant component positive real."""
    v = np.array([x0, x1], dtype=complex)
    nrm = np.linalg.norm(v)
    if nrm == 0.0:
        raise InvariantViolation("projective point needs a nonzero pair")
    v /= nrm
    lead = v[0] if abs(v[0]) >= abs(v[1]) else v[1]
    v *= np.conj(lead) / abs(lead)
    # exact chart points stay exact
    if abs(v[0]) < 1e-15:
        v = np.array([0.0, 1.0], dtype=complex)
    elif abs(v[1]) < 1e-15:
        v = np.array([1.0, 0.0], dtype=complex)
    return complex(v[0]), complex(v[1])


@dataclass(frozen=True)
class ProjectiveRoot:
    """A point of P^1 as a unit pair [x0:x1], with a multiplicity."""

    x0: complex
    x1: complex
    multiplicity: int = 1

    @classmethod
    def from_pair(cls, x0, x1, multiplicity=1):
        a, b = _canonical_pair(x0, x1)
        return cls(a, b, int(multiplicity))

    @classmethod
    def from_affine(cls, z, multiplicity=1):
        return cls.from_pair(complex(z), 1.0, multiplicity)

    @property
    def is_infinite(self):
        return self.x1 == 0

    @property
    def affine(self):
        """x0/x1; inf for [1:0]."""
        if self.x1 == 0:
            return complex(np.inf, 0.0)
        return self.x0 / self.x1

    def chordal(self, other):
        return abs(self.x0 * other.x1 - self.x1 * other.x0)

    def sort_key(self):
        return (
            round(self.x0.real, 12),
            round(self.x0.imag, 12),
            round(self.x1.real, 12),
            round(self.x1.imag, 12),
        )


def chordal(p, q):
    """Chordal distance |u ^ v| between unit pairs; bounded by 1, infinity-safe."""
    return p.chordal(q)


def _exact_gaussian(values):
    out = []
    for c in values:
        c = complex(c)
        re, im = round(c.real), round(c.imag)
        if c.real != re or c.imag != im:
            return None
        out.append((int(re), int(im)))
    return tuple(out)


@dataclass(frozen=True)
class BinaryForm:
    """Degree-d binary form; see module docstring for the coefficient layout."""

    degree: int
    coeffs: np.ndarray  # unit 2-norm, descending
    scale: float = 1.0
    exact: tuple | None = field(default=None, compare=False)

    @classmethod
    def from_coefficients(cls, values):
        c = np.asarray(values, dtype=complex).ravel()
        if c.size == 0:
            raise PreconditionError("empty coefficient list")
        nrm = float(np.linalg.norm(c))
        if nrm == 0.0:
            raise PreconditionError("zero polynomial")
        return cls(
            degree=c.size - 1,
            coeffs=c / nrm,
            scale=nrm,
            exact=_exact_gaussian(values),
        )

    @classmethod
    def from_roots(cls, roots, scale=1.0):
        """Product of the linear forms vanishing at the given projective points."""
        c = np.array([scale], dtype=complex)
        for r in roots:
            for _ in range(r.multiplicity):
                c = np.convolve(c, [r.x1, -r.x0])
        return cls.from_coefficients(c)

    @property
    def full_coeffs(self):
        if self.exact is not None:
            return np.array([complex(re, im) for re, im in self.exact])
        return self.scale * self.coeffs

    def __call__(self, x0, x1):
        """Homogeneous evaluation, stable on both charts of P^1."""
        c = self.full_coeffs
        x0 = np.asarray(x0, dtype=complex)
        x1 = np.asarray(x1, dtype=complex)
        big0 = np.abs(x0) >= np.abs(x1)
        w = np.where(big0, np.divide(x1, x0, out=np.zeros_like(x0), where=big0), 0)
        z = np.where(big0, 0, np.divide(x0, x1, out=np.zeros_like(x0), where=~big0))
        v0 = x0**self.degree * np.polyval(c[::-1], w)
        v1 = x1**self.degree * np.polyval(c, z)
        res = np.where(big0, v0, v1)
        return complex(res) if res.ndim == 0 else res

    def multiply(self, other):
        return BinaryForm.from_coefficients(
            _kernels.polymul(self.full_coeffs, other.full_coeffs)
        )

    def add(self, other):
        if self.degree != other.degree:
            raise PreconditionError("can only add forms of equal degree")
        return BinaryForm.from_coefficients(self.full_coeffs + other.full_coeffs)

    def scaled(self, factor):
        return BinaryForm.from_coefficients(factor * self.full_coeffs)

    def partials(self):
        """(df/dx0, df/dx1), both of degree d-1; requires d >= 1."""
        if self.degree < 1:
            raise PreconditionError("constant form has no partials")
        c = self.full_coeffs
        d = self.degree
        k = np.arange(d + 1)
        return (
            BinaryForm.from_coefficients((d - k[:-1]) * c[:-1]),
            BinaryForm.from_coefficients(k[1:] * c[1:]),
        )

    def compose(self, m):
        """Substitute (x0, x1) -> (m00 x0 + m01 x1, m10 x0 + m11 x1)."""
        (a, b), (c, d) = (m[0][0], m[0][1]), (m[1][0], m[1][1])
        cf = self.full_coeffs
        deg = self.degree
        acc = np.zeros(deg + 1, dtype=complex)
        u_pows = [np.array([1.0], dtype=complex)]
        v_pows = [np.array([1.0], dtype=complex)]
        for _ in range(deg):
            u_pows.append(np.convolve(u_pows[-1], [a, b]))
            v_pows.append(np.convolve(v_pows[-1], [c, d]))
        for k in range(deg + 1):
            term = cf[k] * np.convolve(u_pows[deg - k], v_pows[k])
            acc += term
        return BinaryForm.from_coefficients(acc)

    def proportional_to(self, other, tol=1e-9):
        if self.degree != other.degree:
            return False
        inner = np.vdot(self.coeffs, other.coeffs)
        return bool(abs(abs(inner) - 1.0) <= tol)


def _conv_matrix(c, j):
    """Matrix of u -> conv(c, u) acting on coefficient vectors of degree j."""
    c = np.asarray(c, dtype=complex)
    rows = c.size + j
    t = np.zeros((rows, j + 1), dtype=complex)
    for col in range(j + 1):
        t[col : col + c.size, col] = c
    return t


def divide(f, g, tol=1e-8):
    """Exact-quotient deconvolution f / g; raises when g does not divide f."""
    if g.degree > f.degree:
        raise PreconditionError("divisor degree exceeds dividend degree")
    k = f.degree - g.degree
    t = _conv_matrix(g.coeffs, k)
    q, *_ = np.linalg.lstsq(t, f.coeffs, rcond=None)
    resid = np.linalg.norm(t @ q - f.coeffs)
    if resid > tol:
        raise InvariantViolation(f"inexact polynomial division (residual {resid:.2e})")
    return BinaryForm.from_coefficients(q * (f.scale / g.scale))


def resultant(f, g):
    """Binary-form resultant at formal degrees; zero iff a shared projective root."""
    if f.degree < 1 or g.degree < 1:
        raise PreconditionError("resultant needs degrees >= 1")
    return _kernels.sylvester_det(f.full_coeffs, g.full_coeffs)


def discriminant(f):
    """Discriminant normalized as lc^(2d-2) * prod (root differences)^2.

    Computed from Res(df/dx0, df/dx1) so forms with a root at [1:0] need no
    special casing.
    """
    d = f.degree
    if d < 2:
        raise PreconditionError("discriminant needs degree >= 2")
    fx0, fx1 = f.partials()
    res = _kernels.sylvester_det(fx0.full_coeffs, fx1.full_coeffs)
    sign = -1.0 if (d * (d - 1) // 2) % 2 else 1.0
    return sign * res / float(d) ** (d - 2)


def _strip_exact_axis_roots(c):
    """Split off exact roots at [1:0] (leading zeros) and [0:1] (trailing zeros)."""
    lead = 0
    while lead < c.size - 1 and c[lead] == 0:
        lead += 1
    trail = 0
    while trail < c.size - 1 - lead and c[c.size - 1 - trail] == 0:
        trail += 1
    return c[lead : c.size - trail], lead, trail


def _polish(z, c, steps=3):
    """Newton polish of an affine root of the descending polynomial c."""
    dc = np.polyder(c)
    for _ in range(steps):
        dv = np.polyval(dc, z)
        if dv == 0:
            break
        z = z - np.polyval(c, z) / dv
    return z


def _simple_projective_roots(f):
    """Companion-matrix roots in the chart with larger leading magnitude."""
    c, at_inf, at_zero = _strip_exact_axis_roots(f.coeffs)
    pts = [ProjectiveRoot(1.0, 0.0)] * at_inf + [ProjectiveRoot(0.0, 1.0)] * at_zero
    if c.size > 1:
        if abs(c[0]) >= abs(c[-1]):
            zs = np.roots(c)
            zs = [_polish(z, c) for z in zs]
            pts += [ProjectiveRoot.from_pair(z, 1.0) for z in zs]
        else:
            rc = c[::-1]
            ws = np.roots(rc)
            ws = [_polish(w, rc) for w in ws]
            pts += [ProjectiveRoot.from_pair(1.0, w) for w in ws]
    return pts


def _merge_clusters(points, radius):
    merged = []
    for p in sorted(points, key=lambda r: r.sort_key()):
        for i, q in enumerate(merged):
            if p.chordal(q) <= radius:
                merged[i] = ProjectiveRoot(q.x0, q.x1, q.multiplicity + p.multiplicity)
                break
        else:
            merged.append(p)
    return merged


def roots(f, cluster_radius=CLUSTER_RADIUS):
    """All projective roots of f with multiplicities summing to deg f.

    Multiple roots are resolved through the square-free chain
    gcd(df/dx0, df/dx1) so that planted high-multiplicity factors come back
    exact instead of as eigenvalue clusters.
    """
    d = f.degree
    if d == 0:
        return []
    if d == 1:
        c = f.coeffs
        return [ProjectiveRoot.from_pair(c[1], -c[0])]
    fx0, fx1 = f.partials()
    rep = gcd(fx0, fx1)
    if rep.degree == 0:
        out = _simple_projective_roots(f)
    else:
        try:
            radical = divide(f, rep)
            support = _simple_projective_roots(radical)
            inner = roots(rep, cluster_radius)
            out = []
            for p in support:
                mult = 1
                for q in inner:
                    if p.chordal(q) <= max(cluster_radius, 1e-8):
                        mult += q.multiplicity
                        break
                out.append(ProjectiveRoot(p.x0, p.x1, mult))
        except InvariantViolation:
            # spurious near-multiple detection: treat as square-free
            out = _simple_projective_roots(f)
    out = _merge_clusters(out, cluster_radius)
    if sum(r.multiplicity for r in out) != d:
        # tolerance mismatch in the chain: fall back to direct clustering
        out = _merge_clusters(_simple_projective_roots(f), cluster_radius)
    return sorted(out, key=lambda r: r.sort_key())


def _gcd_exact(f, g):
    """Exact gcd over the Gaussian rationals; used for integer-coefficient inputs."""
    import sympy

    z = sympy.Symbol("z")

    def split(exact):
        c = list(exact)
        lead = 0
        while lead < len(c) - 1 and c[lead] == (0, 0):
            lead += 1
        trail = 0
        while trail < len(c) - 1 - lead and c[len(c) - 1 - trail] == (0, 0):
            trail += 1
        core = c[lead : len(c) - trail]
        poly = sum(
            (sympy.Integer(re) + sympy.I * sympy.Integer(im)) * z ** (len(core) - 1 - i)
            for i, (re, im) in enumerate(core)
        )
        return poly, lead, trail

    pf, x1f, x0f = split(f.exact)
    pg, x1g, x0g = split(g.exact)
    core = sympy.gcd(sympy.Poly(pf, z, domain="QQ_I"), sympy.Poly(pg, z, domain="QQ_I"))
    core_coeffs = [complex(v) for v in core.all_coeffs()]
    c = np.array(core_coeffs, dtype=complex)
    c = np.concatenate([np.zeros(min(x1f, x1g)), c, np.zeros(min(x0f, x0g))])
    return BinaryForm.from_coefficients(c)


def _gcd_numeric(f, g, tol):
    fc = f.coeffs
    gc = g.coeffs
    m, n = f.degree, g.degree
    s = np.zeros((m + n, m + n), dtype=complex)
    for i in range(n):
        s[i, i : i + m + 1] = fc
    for i in range(m):
        s[n + i, i : i + n + 1] = gc
    sv = np.linalg.svd(s, compute_uv=False)
    k = int(np.sum(sv <= tol * sv[0]))
    if k == 0:
        return BinaryForm.from_coefficients([1.0])
    # cofactor relation f*u = g*v with deg u = n-k, deg v = m-k
    big = np.hstack([_conv_matrix(fc, n - k), -_conv_matrix(gc, m - k)])
    _, _, vh = np.linalg.svd(big)
    null = np.conj(vh[-1])
    u = null[: n - k + 1]
    v = null[n - k + 1 :]
    t = np.vstack([_conv_matrix(v, k), _conv_matrix(u, k)])
    rhs = np.concatenate([fc, gc])
    h, *_ = np.linalg.lstsq(t, rhs, rcond=None)
    return BinaryForm.from_coefficients(h)


def gcd(f, g, tol=TOL_GCD):
    """Greatest common divisor up to scale; degree 0 means coprime.

    Runs the exact Gaussian-rational algorithm whenever both inputs carry
    exact integer coefficients, otherwise an SVD rank test on the Sylvester
    matrix of the unit-normalized forms with relative tolerance `tol`.
    """
    if f.degree == 0 or g.degree == 0:
        return BinaryForm.from_coefficients([1.0])
    if f.exact is not None and g.exact is not None:
        return _gcd_exact(f, g)
    return _gcd_numeric(f, g, tol)
