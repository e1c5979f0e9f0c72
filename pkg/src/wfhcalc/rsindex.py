"""Robbin-Salamon indices of direct sums of planar rotations.

A :class:`RotationPath` is ``Psi(t) = diag(exp(i w_1 t), ..., exp(i w_m t))``
on a time interval given in units of pi.  Two boundary conditions are
supported:

* ``LAGRANGIAN``: the index of the Lagrangian path ``Psi(t) Lambda`` relative
  to a fixed Lagrangian ``Lambda`` that is a real line in every block.  A block
  crosses whenever its angle lies in ``pi Z``.
* ``GRAPH``: the index of ``Gr(Psi(t))`` relative to the diagonal.  A block
  crosses whenever its angle lies in ``2 pi Z``, with a two-dimensional
  crossing.

:func:`rs_index` counts crossings by integer divisibility on exact rationals.
:func:`rs_index_numeric` is an independent floating-point oracle that samples
the path, locates crossings, and reads off the crossing form signature from
finite differences of the matrices.

The Reeb flows of weighted homogeneous links are modelled by the blocks
``1/a_0, ..., 1/a_n`` together with one extra block of speed ``-1``.  The
extra block stands for the normal line to the link, which the weighted
C*-action rotates at unit speed.  This is a modelling choice: it is the
smallest block system whose crossing count reproduces the known orbit index
``2 lcm(a) (sum 1/a_j - 1)``; it is not a derivation of the linearised flow
in a capping trivialisation.
"""

from __future__ import annotations

import enum
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .rational import fmt, fmt_pi, lcm, parse_pi, parse_rational


@dataclass(frozen=True, order=True)
class HalfInteger:
    """An exact element of (1/2)Z, stored as its doubled value."""

    numerator: int

    @classmethod
    def of(cls, value: Fraction | int | HalfInteger) -> HalfInteger:
        if isinstance(value, HalfInteger):
            return value
        doubled = Fraction(value) * 2
        if doubled.denominator != 1:
            raise ValueError(f"{value} is not a half-integer")
        return cls(int(doubled))

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, 2)

    def is_integer(self) -> bool:
        return self.numerator % 2 == 0

    def __int__(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self} is not an integer")
        return self.numerator // 2

    def __add__(self, other):
        return HalfInteger(self.numerator + HalfInteger.of(other).numerator)

    __radd__ = __add__

    def __sub__(self, other):
        return HalfInteger(self.numerator - HalfInteger.of(other).numerator)

    def __neg__(self):
        return HalfInteger(-self.numerator)

    def __mul__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        return HalfInteger(self.numerator * k)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, HalfInteger):
            return self.numerator == other.numerator
        if isinstance(other, (int, Fraction)):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __str__(self):
        return fmt(self.value)


class Boundary(enum.Enum):
    LAGRANGIAN = "lagrangian"
    GRAPH = "graph"

    @classmethod
    def parse(cls, text: str) -> Boundary:
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"boundary must be 'lagrangian' or 'graph', got {text!r}") from None


@dataclass(frozen=True)
class RotationPath:
    """Rotation blocks with rational speeds, run for ``duration`` (units of pi).

    ``start`` shifts the time window to ``[start, start + duration]``; it is
    only needed when splitting a path for catenation checks.
    """

    blocks: tuple[Fraction, ...]
    duration: Fraction
    boundary: Boundary = Boundary.LAGRANGIAN
    start: Fraction = field(default=Fraction(0))

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(Fraction(b) for b in self.blocks))
        object.__setattr__(self, "duration", Fraction(self.duration))
        object.__setattr__(self, "start", Fraction(self.start))
        if not self.blocks:
            raise ValueError("a rotation path needs at least one block")
        if self.duration <= 0:
            raise ValueError(f"duration must be positive, got {self.duration}")

    @property
    def end(self) -> Fraction:
        return self.start + self.duration

    def split(self, at: Fraction) -> tuple[RotationPath, RotationPath]:
        at = Fraction(at)
        if not self.start < at < self.end:
            raise ValueError(f"split point {at} outside ({self.start}, {self.end})")
        left = RotationPath(self.blocks, at - self.start, self.boundary, self.start)
        right = RotationPath(self.blocks, self.end - at, self.boundary, at)
        return left, right

    def with_boundary(self, boundary: Boundary) -> RotationPath:
        return RotationPath(self.blocks, self.duration, boundary, self.start)

    def negated(self) -> RotationPath:
        return RotationPath(tuple(-b for b in self.blocks), self.duration, self.boundary, self.start)

    def describe(self) -> str:
        speeds = ",".join(fmt(b) for b in self.blocks)
        return f"[{speeds}] over {fmt_pi(self.duration)} ({self.boundary.value})"

    @classmethod
    def parse(cls, blocks: str, duration: str, boundary: str = "lagrangian") -> RotationPath:
        return cls(parse_blocks(blocks), parse_pi(duration), Boundary.parse(boundary))


def parse_blocks(text: str) -> tuple[Fraction, ...]:
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise ValueError("no rotation speeds given")
    return tuple(parse_rational(p) for p in parts)


# --- exact crossing count -----------------------------------------------------


def _block_index(speed: Fraction, start: Fraction, end: Fraction, boundary: Boundary) -> Fraction:
    if speed == 0 or start == end:
        return Fraction(0)
    # crossings sit where speed * t / period is an integer (t in units of pi)
    period, kappa = (1, 1) if boundary is Boundary.LAGRANGIAN else (2, 2)
    a, b = speed * start / period, speed * end / period
    lo, hi = min(a, b), max(a, b)
    interior = math.ceil(hi) - math.floor(lo) - 1
    ends = (lo.denominator == 1) + (hi.denominator == 1)
    total = kappa * interior + Fraction(kappa, 2) * ends
    return total if speed > 0 else -total


def rs_index(path: RotationPath) -> HalfInteger:
    """Exact Robbin-Salamon index of ``path`` by crossing count."""
    return HalfInteger.of(
        sum((_block_index(w, path.start, path.end, path.boundary) for w in path.blocks), Fraction(0))
    )


# --- numeric oracle -------------------------------------------------------------


class UnresolvedCrossings(RuntimeError):
    """The sampling grid is too coarse to separate the crossings of a block."""


_J0 = np.array([[0.0, 1.0], [-1.0, 0.0]])  # omega(u, v) = u^T J0 v, omega(e1, e2) = 1


def _rotations(speed: float, s: np.ndarray) -> np.ndarray:
    theta = speed * math.pi * s
    c, sn = np.cos(theta), np.sin(theta)
    out = np.empty(s.shape + (2, 2))
    out[..., 0, 0], out[..., 0, 1] = c, -sn
    out[..., 1, 0], out[..., 1, 1] = sn, c
    return out


def _sigma_min_2x2(m: np.ndarray) -> np.ndarray:
    fro2 = np.einsum("...ij,...ij->...", m, m)
    det = m[..., 0, 0] * m[..., 1, 1] - m[..., 0, 1] * m[..., 1, 0]
    disc = np.sqrt(np.maximum(fro2 * fro2 - 4.0 * det * det, 0.0))
    return np.sqrt(np.maximum((fro2 - disc) / 2.0, 0.0))


def _distance(psi: np.ndarray, boundary: Boundary) -> np.ndarray:
    """How far the moving Lagrangian is from meeting the reference."""
    if boundary is Boundary.LAGRANGIAN:
        # frame of Psi * R is Psi e1; it meets R iff its y-part vanishes
        return np.abs(psi[..., 1, 0])
    return _sigma_min_2x2(psi - np.eye(2))


def _golden_min(f, a: np.ndarray, b: np.ndarray, width: float) -> np.ndarray:
    """Vectorised golden-section search for the minimiser of ``f`` on each [a, b]."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = a.astype(float).copy(), b.astype(float).copy()
    c, d = b - invphi * (b - a), a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while np.max(b - a, initial=0.0) > width:
        left = fc <= fd
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        nc = np.where(left, b - invphi * (b - a), d)
        nd = np.where(left, c, a + invphi * (b - a))
        fnew = f(np.where(left, nc, nd))
        fc, fd = np.where(left, fnew, fd), np.where(left, fc, fnew)
        c, d = nc, nd
    # the true minimiser may be an endpoint of the original bracket
    cands = np.stack([a, b, (a + b) / 2.0])
    vals = np.stack([f(a), f(b), f((a + b) / 2.0)])
    return cands[np.argmin(vals, axis=0), np.arange(a.size)]


def _crossing_forms(speed: float, s: np.ndarray, lo: float, hi: float, fd_step: float,
                    boundary: Boundary) -> tuple[np.ndarray, np.ndarray]:
    """Crossing form restricted to the crossing subspace at each time in ``s``.

    Returns ``(eigs, mask)``: eigenvalues padded to width 2, and which of them
    belong to the crossing subspace.
    """
    s_lo, s_hi = np.maximum(lo, s - fd_step), np.minimum(hi, s + fd_step)
    p_lo, p, p_hi = (_rotations(speed, x) for x in (s_lo, s, s_hi))
    dpsi = (p_hi - p_lo) / (s_hi - s_lo)[:, None, None]
    q = _J0 @ dpsi @ np.linalg.inv(p)
    q = (q + np.swapaxes(q, -1, -2)) / 2.0
    eigs = np.zeros((s.size, 2))
    mask = np.zeros((s.size, 2), dtype=bool)
    if boundary is Boundary.LAGRANGIAN:
        # Psi R meets R in the line spanned by the moving frame Psi e1
        v = p[:, :, 0]
        eigs[:, 0] = np.einsum("ki,kij,kj->k", v, q, v)
        mask[:, 0] = True
        return eigs, mask
    _, sv, vt = np.linalg.svd(p - np.eye(2))
    in_kernel = sv <= 1e-4
    full = in_kernel.all(axis=1)
    eigs[full] = np.linalg.eigvalsh(q[full])
    mask[full] = True
    line = in_kernel[:, 1] & ~full
    v = vt[line, 1, :]
    eigs[line, 0] = np.einsum("ki,kij,kj->k", v, q[line], v)
    mask[line, 0] = True
    return eigs, mask


def _block_numeric(speed: float, path: RotationPath, samples: int, tolerance: float,
                   rng: np.random.Generator | None) -> Fraction:
    start, end = float(path.start), float(path.end)
    dur = end - start
    h = dur / samples
    grid = start + h * np.arange(samples + 1, dtype=float)
    if rng is not None and samples > 1:
        grid[1:-1] += h * rng.uniform(-0.3, 0.3, samples - 1)

    def dist(s):
        return _distance(_rotations(speed, np.asarray(s, dtype=float)), path.boundary)

    d = dist(grid)
    step = np.abs(np.diff(d))
    lip = float(np.max(step / np.diff(grid)))
    accept = 8.0 * lip * tolerance * dur + 1e-12
    fd_step = min(h / 8.0, 1e-6 * max(dur, 1.0))

    if float(np.max(d)) <= accept:
        # the path never leaves the reference: only a constant path does that
        eigs, mask = _crossing_forms(speed, np.array([(start + end) / 2.0]), start, end,
                                     fd_step, path.boundary)
        if np.any(np.abs(eigs[mask]) > 1e-9):
            raise UnresolvedCrossings("non-isolated crossing with nonzero crossing form")
        return Fraction(0)
    if float(np.max(step)) > 0.3:
        raise UnresolvedCrossings(
            f"unresolved crossing cluster: speed {speed} turns too far between samples; raise samples"
        )

    left = np.concatenate([[np.inf], d[:-1]])
    right = np.concatenate([d[1:], [np.inf]])
    idx = np.nonzero((d <= left) & (d < right))[0]
    if idx.size == 0:
        return Fraction(0)
    s_star = _golden_min(dist, grid[np.maximum(idx - 1, 0)], grid[np.minimum(idx + 1, samples)],
                         tolerance * dur)
    s_star = np.sort(s_star[dist(s_star) <= accept])
    if s_star.size == 0:
        return Fraction(0)
    keep = np.concatenate([[True], np.diff(s_star) > 4 * tolerance * dur])
    s_star = s_star[keep]
    gaps = np.diff(s_star)
    if np.any(gaps < 2 * h):
        where = s_star[np.argmax(gaps < 2 * h)]
        raise UnresolvedCrossings(f"unresolved crossing cluster near t = {where:.6g} pi")

    eigs, mask = _crossing_forms(speed, s_star, start, end, fd_step, path.boundary)
    scale = max(1.0, abs(speed)) * math.pi
    if np.any(mask & (np.abs(eigs) < 1e-6 * scale)) or not np.all(mask.any(axis=1)):
        bad = s_star[np.argmax((mask & (np.abs(eigs) < 1e-6 * scale)).any(axis=1) | ~mask.any(axis=1))]
        raise UnresolvedCrossings(f"degenerate crossing form at t = {bad:.6g} pi")
    sig = (np.sum(mask & (eigs > 0), axis=1) - np.sum(mask & (eigs < 0), axis=1)).astype(int)
    at_end = (np.abs(s_star - start) <= 2 * tolerance * dur) | (np.abs(s_star - end) <= 2 * tolerance * dur)
    return Fraction(int(sig[~at_end].sum())) + Fraction(int(sig[at_end].sum()), 2)


def rs_index_numeric(path: RotationPath, samples: int = 10_000, tolerance: float = 1e-10,
                     seed: int | None = None) -> HalfInteger:
    """Sampled crossing-form evaluation of the Robbin-Salamon index.

    ``tolerance`` is relative to the duration.  ``seed`` jitters the interior
    sample points; the answer must not depend on it.
    """
    if samples < 2:
        raise ValueError("need at least two samples")
    rng = np.random.default_rng(seed) if seed is not None else None
    total = sum(
        (_block_numeric(float(w), path, samples, tolerance, rng) for w in path.blocks), Fraction(0)
    )
    return HalfInteger.of(total)


def suggested_samples(path: RotationPath, per_turn: int = 24, floor: int = 2_000) -> int:
    """A sample count that resolves every block's crossings comfortably."""
    fastest = max(abs(w) for w in path.blocks) * path.duration
    return max(floor, int(math.ceil(fastest * per_turn)) + 1)


# --- weighted homogeneous links ---------------------------------------------------


def link_blocks(weights: Sequence[int]) -> tuple[Fraction, ...]:
    """Rotation speeds of the linearised weighted C*-action, plus the normal block."""
    weights = _check_weights(weights)
    return tuple(Fraction(1, a) for a in weights) + (Fraction(-1),)


def _check_weights(weights: Iterable[int]) -> tuple[int, ...]:
    weights = tuple(int(a) for a in weights)
    if not weights:
        raise ValueError("weights must be non-empty")
    if any(a < 1 for a in weights):
        raise ValueError(f"weights must be positive integers, got {weights}")
    return weights


def weighted_homogeneous_orbit_index(weights: Sequence[int], cover: int) -> HalfInteger:
    """Graph index of the ``cover``-fold principal orbit of the link."""
    weights = _check_weights(weights)
    if cover < 0:
        raise ValueError("cover must be non-negative")
    if cover == 0:
        return HalfInteger(0)
    path = RotationPath(link_blocks(weights), 2 * cover * lcm(*weights), Boundary.GRAPH)
    return rs_index(path)


def half_chord_index(weights: Sequence[int], cover: int) -> HalfInteger:
    """Lagrangian index over half of the ``cover``-fold principal period."""
    weights = _check_weights(weights)
    if cover < 0:
        raise ValueError("cover must be non-negative")
    if cover == 0:
        return HalfInteger(0)
    path = RotationPath(link_blocks(weights), cover * lcm(*weights), Boundary.LAGRANGIAN)
    return rs_index(path)


def orbit_index_formula(weights: Sequence[int], cover: int) -> Fraction:
    """``2 N lcm(a) (sum 1/a_j - 1)``, evaluated directly."""
    weights = _check_weights(weights)
    L = lcm(*weights)
    return 2 * cover * L * (sum(Fraction(1, a) for a in weights) - 1)
