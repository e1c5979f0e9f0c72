"""Chord data for the model families.

Each family is a small frozen dataclass. ``build`` turns one into a
``ChordSystem``: the minimal chord period, the topology of the chord
components, which iterates are contractible and the index of each admitted
iterate. Times and actions are rational multiples of pi and are stored as the
rational coefficient.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .graded import Ball, BallPair, DisjointUnion, Opaque, SpaceModel, Sphere
from .rational import fmt, fmt_pi, lcm
from .rsindex import Boundary, RotationPath, link_blocks, rs_index


class ModelError(ValueError):
    """Parameters outside a family's range of validity."""


class IndexUnavailable(LookupError):
    """The model has no chord index data; index queries are refused."""


class PeriodConvention(enum.Enum):
    FLOW_DERIVED = "flow-derived"
    PAPER = "paper"

    @classmethod
    def parse(cls, text: str | PeriodConvention) -> PeriodConvention:
        if isinstance(text, cls):
            return text
        key = text.strip().lower().replace("_", "-")
        for member in cls:
            if member.value == key:
                return member
        raise ValueError(f"unknown period convention {text!r} (expected 'paper' or 'flow-derived')")


# --- families ---------------------------------------------------------------------


def _need(cond: bool, message: str) -> None:
    if not cond:
        raise ModelError(message)


@dataclass(frozen=True)
class AkMilnor:
    """Milnor fiber of z0^(k+1) + z1^2 + ... + zn^2."""

    n: int
    k: int

    def __post_init__(self):
        _need(self.n >= 3, f"A_k Milnor fiber needs n >= 3, got n={self.n}")
        _need(self.k >= 1, f"A_k Milnor fiber needs k >= 1, got k={self.k}")

    @property
    def weights(self) -> tuple[int, ...]:
        return (self.k + 1,) + (2,) * self.n

    def preset(self) -> str:
        return f"ak:n={self.n},k={self.k}"


@dataclass(frozen=True)
class ProjectiveComplement:
    """Complement of a real degree-k hypersurface in CP^n."""

    n: int
    k: int

    def __post_init__(self):
        _need(self.n >= 3, f"projective complement needs n >= 3, got n={self.n}")
        _need(self.k >= 1, f"projective complement needs k >= 1, got k={self.k}")

    def preset(self) -> str:
        return f"cpn-complement:n={self.n},k={self.k}"


@dataclass(frozen=True)
class HypersurfaceComplement:
    """Complement of a real hyperplane section in a degree-d hypersurface of CP^(n+1)."""

    n: int
    d: int

    def __post_init__(self):
        _need(self.n >= 3, f"hypersurface complement needs n >= 3, got n={self.n}")
        _need(self.d >= 1, f"hypersurface complement needs d >= 1, got d={self.d}")

    def preset(self) -> str:
        return f"hypersurface-complement:n={self.n},d={self.d}"


CROSS_BASES = ("sphere", "rp", "cp", "hp", "cap")


@dataclass(frozen=True)
class CrossCotangent:
    """Unit codisk bundle of a compact rank one symmetric space, fiber as Lagrangian."""

    base: str
    n: int

    def __post_init__(self):
        _need(self.base in CROSS_BASES, f"unknown CROSS base {self.base!r}; expected one of {', '.join(CROSS_BASES)}")
        _need(self.n >= 2, f"CROSS needs real dimension n >= 2, got n={self.n}")
        if self.base == "cp":
            _need(self.n % 2 == 0, f"CP base needs even real dimension, got n={self.n}")
        elif self.base == "hp":
            _need(self.n % 4 == 0, f"HP base needs real dimension divisible by 4, got n={self.n}")
        elif self.base == "cap":
            _need(self.n == 16, f"Cayley plane has real dimension 16, got n={self.n}")

    def preset(self) -> str:
        return f"cross:base={self.base},n={self.n}"


@dataclass(frozen=True)
class Homogeneous:
    """Milnor fiber of z0^k + ... + zn^k for odd k."""

    n: int
    k: int

    def __post_init__(self):
        _need(self.n >= 3, f"homogeneous Milnor fiber needs n >= 3, got n={self.n}")
        _need(self.k >= 1 and self.k % 2 == 1, f"homogeneous Milnor fiber needs odd k >= 1, got k={self.k}")

    @property
    def weights(self) -> tuple[int, ...]:
        return (self.k,) * (self.n + 1)

    def preset(self) -> str:
        return f"homogeneous:n={self.n},k={self.k}"


ModelFamily = Union[AkMilnor, ProjectiveComplement, HypersurfaceComplement, CrossCotangent, Homogeneous]

_PRESETS: dict[str, tuple[type, tuple[str, ...]]] = {
    "ak": (AkMilnor, ("n", "k")),
    "cpn-complement": (ProjectiveComplement, ("n", "k")),
    "hypersurface-complement": (HypersurfaceComplement, ("n", "d")),
    "cross": (CrossCotangent, ("base", "n")),
    "homogeneous": (Homogeneous, ("n", "k")),
}

_BASE_ALIASES = {"s": "sphere", "sn": "sphere", "sphere": "sphere", "rp": "rp", "rpn": "rp",
                 "cp": "cp", "cpn": "cp", "hp": "hp", "hpn": "hp", "cap": "cap", "cap2": "cap"}


def parse_model(text: str) -> ModelFamily:
    """Parse a preset such as ``"ak:n=3,k=2"`` or ``"cross:base=sphere,n=4"``."""
    m = re.fullmatch(r"\s*([a-z-]+)\s*:\s*(.*?)\s*", text)
    if not m or m.group(1) not in _PRESETS:
        known = ", ".join(_PRESETS)
        raise ValueError(f"cannot parse model {text!r}; expected '<family>:key=value,...' with family in {known}")
    cls, keys = _PRESETS[m.group(1)]
    params: dict[str, str] = {}
    for item in filter(None, (s.strip() for s in m.group(2).split(","))):
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in keys or key in params:
            raise ValueError(f"bad parameter {item!r} for {m.group(1)}; expected {', '.join(k + '=' for k in keys)}")
        params[key] = value.strip()
    missing = [k for k in keys if k not in params]
    if missing:
        raise ValueError(f"model {text!r} is missing {', '.join(missing)}")
    kwargs: dict[str, object] = {}
    for key, value in params.items():
        if key == "base":
            base = _BASE_ALIASES.get(value.lower().replace("^", ""))
            if base is None:
                raise ValueError(f"unknown CROSS base {value!r}")
            kwargs[key] = base
        else:
            try:
                kwargs[key] = int(value)
            except ValueError:
                raise ValueError(f"parameter {key} must be an integer, got {value!r}") from None
    return cls(**kwargs)


# --- chord systems ----------------------------------------------------------------


@dataclass(frozen=True)
class ChordSystem:
    """Chord data of one model, enough to assemble the spectral sequence.

    ``minimal_chord_period`` is T0 (coefficient of pi). Iterate ``l`` has
    period ``l * T0`` and is contractible iff ``contractible_iff_divisible_by``
    divides it; admitted iterates are renumbered ``N = l / divisor``.
    ``unit_index`` is the index of the first admitted iterate and the index
    is linear in N.
    """

    label: str
    n: int
    minimal_chord_period: Fraction
    component_topology: SpaceModel
    lagrangian_topology: SpaceModel
    contractible_iff_divisible_by: int
    unit_index: int | None
    fundamental_group_order: int | None  # None means infinite
    h1c_vanishes: bool
    index_data_available: bool
    orbit_period: Fraction
    convention: PeriodConvention = PeriodConvention.FLOW_DERIVED
    flow_speeds: tuple[Fraction, ...] = ()
    paper_period: Fraction | None = None
    notes: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.minimal_chord_period <= 0:
            raise ValueError("minimal chord period must be positive")
        if self.contractible_iff_divisible_by < 1:
            raise ValueError("contractibility divisor must be a positive integer")
        if self.fundamental_group_order == 1 and self.contractible_iff_divisible_by != 1:
            raise ValueError("simply connected systems must admit every iterate")

    def index_of_iterate(self, N: int) -> int:
        """Index of the N-th admitted (contractible) iterate."""
        if not self.index_data_available or self.unit_index is None:
            raise IndexUnavailable(f"{self.label}: no chord index data for this model")
        if N < 0:
            raise ValueError("iterate must be non-negative")
        return N * self.unit_index

    @property
    def column_gap(self) -> Fraction:
        """Action between consecutive admitted columns."""
        return self.minimal_chord_period * self.contractible_iff_divisible_by

    def column_action(self, N: int) -> Fraction:
        return N * self.column_gap

    def is_admitted(self, l: int) -> bool:
        return l >= 1 and l % self.contractible_iff_divisible_by == 0

    def to_json(self) -> dict:
        from .graded import space_to_json

        out = {
            "label": self.label,
            "n": self.n,
            "convention": self.convention.value,
            "minimal_chord_period_pi": fmt(self.minimal_chord_period),
            "column_gap_pi": fmt(self.column_gap),
            "orbit_period_pi": fmt(self.orbit_period),
            "component_topology": space_to_json(self.component_topology),
            "lagrangian_topology": space_to_json(self.lagrangian_topology),
            "contractible_iff_divisible_by": self.contractible_iff_divisible_by,
            "fundamental_group_order": "infinite" if self.fundamental_group_order is None else self.fundamental_group_order,
            "h1c_vanishes": self.h1c_vanishes,
            "index_data_available": self.index_data_available,
            "unit_index": self.unit_index,
            "flow_speeds": [fmt(s) for s in self.flow_speeds],
            "notes": list(self.notes),
        }
        if self.paper_period is not None:
            out["paper_period_pi"] = fmt(self.paper_period)
        return out


def _connected_legendrian(weights: tuple[int, ...]) -> bool:
    # The real locus {Im z0 = Re z1 = ... = 0} of the link misses a component
    # swap only when the leading weight is odd and there is a transverse block.
    return len(weights) > 1 and weights[0] % 2 == 1


def chord_spectrum_from_flow(weights, convention: PeriodConvention | str = PeriodConvention.FLOW_DERIVED) -> Fraction:
    """Least chord period (coefficient of pi) of the weighted circle action.

    Block j rotates at speed 1/a_j, so it returns the real locus to itself at
    times in a_j pi Z. When the Legendrian is disconnected the chord must also
    return to its starting component, which needs z0 back to itself:
    t in 2 a_0 pi Z.
    """
    weights = tuple(int(a) for a in weights)
    if not weights or any(a < 1 for a in weights):
        raise ValueError(f"weights must be positive integers, got {weights}")
    convention = PeriodConvention.parse(convention)
    period = Fraction(lcm(*weights))
    if not _connected_legendrian(weights):
        period = Fraction(lcm(int(period), 2 * weights[0]))
    if convention is PeriodConvention.PAPER and _is_ak_form(weights) and (weights[0] - 1) % 2 == 0:
        return Fraction(weights[0])
    return period


def _is_ak_form(weights: tuple[int, ...]) -> bool:
    return len(weights) >= 2 and all(a == 2 for a in weights[1:])


def _ak_system(model: AkMilnor, convention: PeriodConvention) -> ChordSystem:
    n, k = model.n, model.k
    period = chord_spectrum_from_flow(model.weights, convention)
    notes = []
    if k % 2 == 1:
        notes.append("chord system built on one component of the disconnected real Lagrangian")
    return ChordSystem(
        label=model.preset(),
        n=n,
        minimal_chord_period=period,
        component_topology=Sphere(n - 1),
        lagrangian_topology=BallPair(n),
        contractible_iff_divisible_by=1,
        unit_index=2 + (n - 2) * (k + 1),
        fundamental_group_order=1,
        h1c_vanishes=True,
        index_data_available=True,
        orbit_period=Fraction(2 * lcm(k + 1, 2)),
        convention=convention,
        flow_speeds=(Fraction(1, k + 1),) + (Fraction(1, 2),) * n,
        paper_period=Fraction(k + 1) if k % 2 == 0 else Fraction(2 * (k + 1)),
        notes=tuple(notes),
    )


def _prequantization_system(label: str, n: int, mu_p: int, period: Fraction, divisor: int,
                            notes: tuple[str, ...] = ()) -> ChordSystem:
    return ChordSystem(
        label=label,
        n=n,
        minimal_chord_period=period,
        component_topology=Sphere(n - 1),
        lagrangian_topology=BallPair(n),
        contractible_iff_divisible_by=divisor,
        unit_index=mu_p,
        fundamental_group_order=divisor,
        h1c_vanishes=True,
        index_data_available=True,
        orbit_period=Fraction(2),  # prequantization period normalised to 2pi
        flow_speeds=(Fraction(1),),
        notes=notes,
    )


def complement_mu(model: ProjectiveComplement | HypersurfaceComplement) -> int:
    """Index of the first contractible chord of a complement model."""
    match model:
        case ProjectiveComplement(n=n, k=k):
            return n + 1 - k if k % 2 == 1 else 2 * (n + 1 - k)
        case HypersurfaceComplement(n=n, d=d):
            return n - d if d % 2 == 1 else 2 * (n - d)
    raise TypeError(f"not a complement model: {model!r}")


def _complement_system(model: ProjectiveComplement | HypersurfaceComplement) -> ChordSystem:
    degree = model.k if isinstance(model, ProjectiveComplement) else model.d
    # odd degree: connected fixed locus, chords every pi; even: every 2pi
    period = Fraction(1) if degree % 2 == 1 else Fraction(2)
    divisor = model.k if isinstance(model, ProjectiveComplement) else 1
    notes = ("Legendrian component count taken from the real Lagrangian case table",)
    if degree % 2 == 0:
        notes += ("chord system built on the ball component of the real Lagrangian",)
    return _prequantization_system(model.preset(), model.n, complement_mu(model), period, divisor, notes)


def _homogeneous_system(model: Homogeneous, convention: PeriodConvention) -> ChordSystem:
    n, k = model.n, model.k
    return ChordSystem(
        label=model.preset(),
        n=n,
        minimal_chord_period=chord_spectrum_from_flow(model.weights, convention),
        component_topology=Sphere(n - 1),
        lagrangian_topology=BallPair(n),
        contractible_iff_divisible_by=1,
        unit_index=n + 1 - k,
        fundamental_group_order=1,
        h1c_vanishes=True,
        index_data_available=True,
        orbit_period=Fraction(2 * k),
        convention=convention,
        flow_speeds=(Fraction(1, k),) * (n + 1),
    )


def _cross_system(model: CrossCotangent, convention: PeriodConvention) -> ChordSystem:
    if model.base == "sphere" and model.n >= 3:
        inner = _ak_system(AkMilnor(model.n, 1), convention)
        return ChordSystem(**{**inner.__dict__, "label": model.preset(),
                              "notes": ("index data from the A_1 Milnor fiber, which is T*S^n",)})
    pi1 = 2 if model.base == "rp" else 1
    return ChordSystem(
        label=model.preset(),
        n=model.n,
        minimal_chord_period=Fraction(2),  # geodesic flow normalised to period 2pi
        component_topology=Sphere(model.n - 1),
        lagrangian_topology=BallPair(model.n),
        contractible_iff_divisible_by=pi1,
        unit_index=None,
        fundamental_group_order=pi1,
        h1c_vanishes=model.n >= 2,
        index_data_available=False,
        orbit_period=Fraction(2),
        convention=convention,
        flow_speeds=(Fraction(1),),
        notes=("spectrum and component topology only; no chord index data for this base",),
    )


def build(model: ModelFamily, period_convention: PeriodConvention | str = PeriodConvention.FLOW_DERIVED) -> ChordSystem:
    convention = PeriodConvention.parse(period_convention)
    match model:
        case AkMilnor():
            return _ak_system(model, convention)
        case ProjectiveComplement() | HypersurfaceComplement():
            return _complement_system(model)
        case Homogeneous():
            return _homogeneous_system(model, convention)
        case CrossCotangent():
            return _cross_system(model, convention)
    raise TypeError(f"unknown model {model!r}")


def real_lagrangian_components(model: ModelFamily) -> tuple[int, tuple[SpaceModel, ...]]:
    """Components of the fixed-point set of the real structure."""
    match model:
        case AkMilnor(n=n, k=k):
            return (1, (Ball(n),)) if k % 2 == 0 else (2, (Ball(n), Ball(n)))
        case ProjectiveComplement(n=n, k=k):
            if k % 2 == 1:
                return 1, (Ball(n),)
            return 2, (Ball(n), Opaque("complement component"))
        case HypersurfaceComplement(n=n, d=d):
            return (1, (Ball(n),)) if d % 2 == 1 else (2, (Ball(n), Ball(n)))
        case Homogeneous(n=n):
            return 1, (Ball(n),)
        case CrossCotangent():
            raise ModelError("fiber is the Lagrangian; not a fixed-point set")
    raise TypeError(f"unknown model {model!r}")


def lagrangian_as_space(model: ModelFamily) -> SpaceModel:
    count, parts = real_lagrangian_components(model)
    return parts[0] if count == 1 else DisjointUnion(parts)


# --- checks -----------------------------------------------------------------------


@dataclass(frozen=True)
class ValidityCheck:
    name: str
    passed: bool
    detail: str

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def morse_bott_validity(system: ChordSystem, iterates: int = 8) -> tuple[ValidityCheck, ...]:
    """Check half-containment of the chord spectrum and periodicity of the flow."""
    checks = []
    T_P = system.orbit_period
    bad = [l for l in range(1, iterates + 1) if (2 * l * system.minimal_chord_period) % T_P]
    checks.append(ValidityCheck(
        "spectrum half-containment",
        not bad,
        f"2T in {fmt_pi(T_P)}Z for T = l*{fmt_pi(system.minimal_chord_period)}, l <= {iterates}"
        + (f"; fails at l = {bad[0]}" if bad else ""),
    ))
    turns = [s * T_P / 2 for s in system.flow_speeds]
    periodic = all(t.denominator == 1 for t in turns)
    checks.append(ValidityCheck(
        "flow periodic at orbit period",
        periodic,
        f"block turns over {fmt_pi(T_P)}: " + ",".join(fmt(t) for t in turns),
    ))
    return tuple(checks)


def rs_chord_index(model: ModelFamily, N: int) -> int:
    """Index of the N-th admitted chord recomputed by crossing counting.

    For the weighted homogeneous families this is the Lagrangian index of the
    linearised flow (plus normal block) over N chord periods. Complements use
    the orbit index of the prequantization fiber with weights (k, ..., k).
    """
    match model:
        case AkMilnor() | Homogeneous():
            weights = model.weights
            # always the flow-derived period: the shortened convention is not a chord
            T = chord_spectrum_from_flow(weights, PeriodConvention.FLOW_DERIVED)
            value = rs_index(RotationPath(link_blocks(weights), N * T, Boundary.LAGRANGIAN))
        case ProjectiveComplement(n=n, k=k) if k % 2 == 0:
            value = rs_index(RotationPath(link_blocks((k,) * (n + 1)), 2 * N * k, Boundary.GRAPH))
        case ProjectiveComplement(n=n, k=k):
            value = rs_index(RotationPath(link_blocks((k,) * (n + 1)), N * k, Boundary.LAGRANGIAN))
        case _:
            raise IndexUnavailable(f"no crossing-count model for {model!r}")
    if not value.is_integer:
        raise ArithmeticError(f"non-integral chord index {value}")
    return int(value)


def admitted_iterates(system: ChordSystem, max_l: int) -> list[int]:
    return [l for l in range(1, max_l + 1) if system.is_admitted(l)]
