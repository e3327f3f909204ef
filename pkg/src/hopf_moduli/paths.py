"""Certified connectivity: discriminant-avoiding paths between moduli points.

A moduli point is a regular, jump-free divisor plus torus coordinates in the
Jacobian fiber.  Base paths are piecewise-linear in the canonical coefficient
chart, certified by adaptive sampling of the regularity margin and by branch
point tracking (no branch point may move more than half the minimal pairwise
separation per step, which keeps the homology bookkeeping unambiguous).
Failures are always budget exhaustion, never a claim of disconnection.

Fiber coordinates ride along the base path through a continued period basis:
at each transport step the freshly computed period lattice is matched to the
carried one by rounding the change of basis to integers; a non-identity
rounding is exactly a deterministic-cycle-construction jump and the product
of corrections reconciles the two endpoint bases.
"""

import hashlib
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import _kernels, forms
from .divisors import (
    GraphDivisor,
    SpectralCurve,
    margin_of_form,
    regularity_margin,
    spectral_curve,
)
from .errors import (
    BudgetExhausted,
    InvariantViolation,
    PreconditionError,
    PrecisionError,
    SingularCurveError,
)
from .hopf import branch_values
from .periods import TorusPoint, _chart_score, choose_chart, period_matrix


@dataclass(frozen=True)
class PathConfig:
    margin_threshold: float = 1e-10
    samples_per_segment: int = 16  # initial interval count per segment
    max_depth: int = 6
    detour_scale: float = 0.35
    min_step: float = 1e-7
    seed: int = 0
    strict: bool = False
    period_step_rel: float = 0.10
    lattice_residual_tol: float = 0.2
    max_samples_per_segment: int = 4000
    max_transport_steps: int = 600

    def __post_init__(self):
        if min(
            self.margin_threshold,
            self.detour_scale,
            self.min_step,
            self.period_step_rel,
        ) <= 0 or self.samples_per_segment < 1:
            raise PreconditionError("path configuration values must be positive")


@dataclass(frozen=True)
class SegmentReport:
    min_margin: float
    monodromy_safe: bool
    samples: int


@dataclass(frozen=True)
class CertifiedPath:
    waypoints: tuple  # GraphDivisor, canonical representatives
    certified_margin: float
    samples_per_segment: int
    monodromy_safe: bool
    segments: tuple = ()
    seed: int = 0


@dataclass(frozen=True)
class ModuliPoint:
    """Regular divisor plus torus coordinates in its Jacobian fiber."""

    divisor: GraphDivisor
    fiber: TorusPoint


@dataclass(frozen=True)
class FiberPath:
    """Straight torus segment, endpoint expressed in the continued basis."""

    start: tuple
    end: tuple
    delta: tuple
    transport_steps: int
    basis_corrections: int
    basis_residual: float
    note: str = "period-basis continuation via integer lattice corrections"


def substream(seed, label):
    """Deterministic Philox substream keyed by (seed, purpose string)."""
    digest = hashlib.sha256(label.encode()).digest()
    words = [int.from_bytes(digest[i : i + 4], "little") for i in range(0, 16, 4)]
    ss = np.random.SeedSequence(entropy=int(seed) & (2**64 - 1), spawn_key=words)
    return np.random.Generator(np.random.Philox(ss))


def _split_vector(vec, n):
    return vec[: n + 1], vec[n + 1 :]


def _canonical_vector(d):
    return d.coefficient_vector()


def _branch_points_at(pcoeffs):
    """Unit-pair branch points of a branch polynomial, infinity-safe."""
    c = np.asarray(pcoeffs, dtype=complex)
    lead = 0
    while lead < c.size - 1 and c[lead] == 0:
        lead += 1
    zs = np.roots(c[lead:]) if c.size - lead > 1 else np.array([])
    if zs.size:
        dc = np.polyder(c[lead:])
        for _ in range(2):
            small = np.abs(zs) < 1e6
            dv = np.polyval(dc, zs)
            ok = small & (dv != 0)
            zs[ok] -= np.polyval(c[lead:], zs[ok]) / dv[ok]
    pts = np.empty((c.size - 1, 2), dtype=complex)
    pts[:lead] = (1.0, 0.0)
    for i, z in enumerate(zs):
        v = np.array([z, 1.0])
        pts[lead + i] = v / np.linalg.norm(v)
    return pts


def _pairwise_min_gap(pts):
    d = np.abs(pts[:, None, 0] * pts[None, :, 1] - pts[:, None, 1] * pts[None, :, 0])
    d[np.diag_indices_from(d)] = np.inf
    return float(d.min())


def _matched_motion(prev, cur):
    cost = np.abs(
        prev[:, None, 0] * cur[None, :, 1] - prev[:, None, 1] * cur[None, :, 0]
    )
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


@dataclass
class _Sample:
    margin: float
    points: np.ndarray
    gap: float


def _sample_segment_point(a0, b0, a1, b1, e, t):
    a = (1.0 - t) * a0 + t * a1
    b = (1.0 - t) * b0 + t * b1
    p = _kernels.branch_coeffs(a, b, *e)
    nrm = np.linalg.norm(p)
    pts = _branch_points_at(p / nrm)
    gap = _pairwise_min_gap(pts)
    margin = float(_kernels.margin_scan(a0, b0, a1, b1, *e, [t])[0])
    if gap < forms.CLUSTER_RADIUS:
        margin = 0.0
    return _Sample(margin, pts, gap)


def certify_segment(d_a, d_b, h, cfg=PathConfig()):
    """Adaptive margin/monodromy certification of one straight segment.

    Refines wherever the sampled margin drops under 4x the threshold or a
    branch point moves more than half the minimal separation, until the local
    step reaches cfg.min_step.  Returns findings, never raises.
    """
    if d_a.n != d_b.n:
        raise PreconditionError("segment endpoints must share n")
    e = tuple(branch_values(h))
    va = _canonical_vector(d_a)
    vb = _canonical_vector(d_b)
    a0, b0 = _split_vector(va, d_a.n)
    a1, b1 = _split_vector(vb, d_b.n)

    ts = list(np.linspace(0.0, 1.0, cfg.samples_per_segment + 1))
    data = {t: _sample_segment_point(a0, b0, a1, b1, e, t) for t in ts}

    def needs_refine(t0, t1):
        s0, s1 = data[t0], data[t1]
        if min(s0.margin, s1.margin) < 4.0 * cfg.margin_threshold:
            return True
        motion = _matched_motion(s0.points, s1.points)
        return motion >= 0.5 * min(s0.gap, s1.gap)

    while len(ts) < cfg.max_samples_per_segment:
        inserts = []
        for t0, t1 in zip(ts, ts[1:]):
            if t1 - t0 > cfg.min_step and needs_refine(t0, t1):
                inserts.append(0.5 * (t0 + t1))
        if not inserts:
            break
        for t in inserts:
            data[t] = _sample_segment_point(a0, b0, a1, b1, e, t)
        ts = sorted(ts + inserts)

    safe = True
    for t0, t1 in zip(ts, ts[1:]):
        s0, s1 = data[t0], data[t1]
        motion = _matched_motion(s0.points, s1.points)
        if motion >= 0.5 * min(s0.gap, s1.gap):
            safe = False
            break
    min_margin = min(s.margin for s in data.values())
    return SegmentReport(min_margin, safe, len(ts))


def connect_base(d0, d1, h, cfg=PathConfig()):
    """Certified piecewise-linear path between regular divisors.

    Straight segment first; on failure, a seeded Gaussian midpoint detour and
    recursion on both halves (the obstruction has real codimension 2, so
    random detours succeed with probability 1).
    """
    if d0.n != d1.n:
        raise PreconditionError("endpoints must share n")
    m0 = regularity_margin(d0, h)
    m1 = regularity_margin(d1, h)
    if m0 <= 0.0 or m1 <= 0.0:
        raise PreconditionError("both endpoints must be regular")
    v0 = _canonical_vector(d0)
    v1 = _canonical_vector(d1)
    n = d0.n
    if np.linalg.norm(v0 - v1) <= 1e-12:
        return CertifiedPath(
            waypoints=(GraphDivisor.from_vector(n, v0),),
            certified_margin=m0,
            samples_per_segment=cfg.samples_per_segment,
            monodromy_safe=True,
            segments=(),
            seed=cfg.seed,
        )

    def build(va, vb, depth, address):
        da = GraphDivisor.from_vector(n, va)
        db = GraphDivisor.from_vector(n, vb)
        rep = certify_segment(da, db, h, cfg)
        if rep.min_margin >= cfg.margin_threshold and rep.monodromy_safe:
            return [(va, vb, rep)]
        if depth <= 0:
            raise BudgetExhausted(
                "no certified path found at this threshold "
                f"(worst margin {rep.min_margin:.3e}, monodromy_safe={rep.monodromy_safe})"
            )
        rng = substream(cfg.seed, f"detour:{address}")
        offset = rng.normal(size=va.size) + 1j * rng.normal(size=va.size)
        offset *= cfg.detour_scale * np.linalg.norm(vb - va) / np.sqrt(2 * va.size)
        mid = 0.5 * (va + vb) + offset
        mid = GraphDivisor.from_vector(n, mid).coefficient_vector()
        left = build(va, mid, depth - 1, address + "0")
        right = build(mid, vb, depth - 1, address + "1")
        return left + right

    pieces = build(v0, v1, cfg.max_depth, "r")
    waypoints = [GraphDivisor.from_vector(n, pieces[0][0])]
    reports = []
    for _, vb, rep in pieces:
        waypoints.append(GraphDivisor.from_vector(n, vb))
        reports.append(rep)
    return CertifiedPath(
        waypoints=tuple(waypoints),
        certified_margin=min(r.min_margin for r in reports),
        samples_per_segment=cfg.samples_per_segment,
        monodromy_safe=all(r.monodromy_safe for r in reports),
        segments=tuple(reports),
        seed=cfg.seed,
    )


def moduli_point(d, h, fiber=None):
    """Validated moduli point; fiber defaults to the origin of the torus."""
    if regularity_margin(d, h) <= 0.0:
        raise PreconditionError("moduli points require a regular divisor")
    pd = period_matrix(spectral_curve(d, h))
    g = pd.genus
    if fiber is None:
        coords = TorusPoint.from_array(np.zeros(2 * g))
    elif isinstance(fiber, TorusPoint):
        coords = fiber
    else:
        arr = np.asarray(fiber, dtype=float)
        if arr.size != 2 * g:
            raise PreconditionError("fiber coordinates must have length 2g")
        coords = TorusPoint.from_array(arr)
    return ModuliPoint(d, coords)


def _period_lattice_at(vec, n, h):
    d = GraphDivisor.from_vector(n, vec)
    pd = period_matrix(spectral_curve(d, h))
    return pd, pd.lattice_matrix()


def _transport_lattice(path, h, cfg):
    """Continue the period basis along the waypoint chain.

    Returns (carried lattice at the endpoint, fresh PeriodData at endpoint,
    steps, corrections).
    """
    n = path.waypoints[0].n
    vecs = [w.coefficient_vector() for w in path.waypoints]
    pd0, carried = _period_lattice_at(vecs[0], n, h)
    steps = 0
    corrections = 0
    fresh_pd = pd0
    for va, vb in zip(vecs, vecs[1:]):
        t = 0.0
        dt = 0.5
        while t < 1.0 - 1e-15:
            if steps > cfg.max_transport_steps:
                raise BudgetExhausted("fiber transport exceeded its step budget")
            dt = min(dt, 1.0 - t)
            target = t + dt
            try:
                fresh_pd, fresh = _period_lattice_at(
                    (1.0 - target) * va + target * vb, n, h
                )
            except Exception:
                dt *= 0.5
                if dt < cfg.min_step:
                    raise BudgetExhausted(
                        "monodromy step-size underflow during fiber transport"
                    )
                continue
            steps += 1
            rel = np.linalg.solve(fresh, carried)
            s_int = np.rint(rel)
            resid = float(np.abs(rel - s_int).max())
            det = abs(np.linalg.det(s_int))
            cand = fresh @ s_int
            drift = np.linalg.norm(cand - carried) / np.linalg.norm(carried)
            if (
                resid > cfg.lattice_residual_tol
                or abs(det - 1.0) > 0.25
                or drift > cfg.period_step_rel
            ):
                dt *= 0.5
                if dt < cfg.min_step:
                    raise BudgetExhausted(
                        "monodromy step-size underflow during fiber transport"
                    )
                continue
            if not np.array_equal(s_int, np.eye(s_int.shape[0])):
                corrections += 1
            carried = cand
            t = target
            dt *= 2.0
    return carried, fresh_pd, steps, corrections


def connect_moduli(m0, m1, h, cfg=PathConfig()):
    """Certified base path plus fiber transport between two moduli points."""
    if m0.divisor.n != m1.divisor.n:
        raise PreconditionError("endpoints must share n")
    base = connect_base(m0.divisor, m1.divisor, h, cfg)
    if not base.monodromy_safe:
        raise BudgetExhausted(
            "monodromy step-size underflow: branch tracking failed along the base path"
        )
    g = 2 * m0.divisor.n - 1
    start = np.array(m0.fiber.coords)
    if len(base.waypoints) == 1:
        end = np.array(m1.fiber.coords)
        delta = _wrap_delta(end - start)
        fiber = FiberPath(
            start=tuple(start),
            end=tuple(end),
            delta=tuple(delta),
            transport_steps=0,
            basis_corrections=0,
            basis_residual=0.0,
        )
        return base, fiber
    carried, fresh_pd, steps, corrections = _transport_lattice(base, h, cfg)
    fresh = fresh_pd.lattice_matrix()
    relation = np.linalg.solve(carried, fresh)
    relation_int = np.rint(relation)
    basis_residual = float(np.abs(relation - relation_int).max())
    if basis_residual > 1e-6:
        raise PrecisionError(
            f"continued and fresh endpoint bases disagree (residual {basis_residual:.2e})"
        )
    v1 = fresh @ np.array(m1.fiber.coords)
    end = np.mod(np.linalg.solve(carried, v1), 1.0)
    delta = _wrap_delta(end - start)
    fiber = FiberPath(
        start=tuple(start),
        end=tuple(end),
        delta=tuple(delta),
        transport_steps=steps,
        basis_corrections=corrections,
        basis_residual=basis_residual,
    )
    assert len(start) == 2 * g
    return base, fiber


def _wrap_delta(delta):
    return tuple(float(x) for x in (np.mod(delta + 0.5, 1.0) - 0.5))
