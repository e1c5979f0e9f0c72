"""Graded Z/2 dimension bookkeeping and homology tables for the model spaces.

Every homology group in this package is a finite-dimensional graded vector
space over Z/2, so all we ever carry around is a map ``degree -> dimension``.
Negative degrees are ordinary citizens (complement models have negative
Maslov indices).
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass


class GradedDims(Mapping):
    """Immutable map from integer degree to positive dimension.

    Zero entries are dropped on construction, so ``GradedDims({3: 0}) == {}``.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        clean: dict[int, int] = {}
        for degree, dim in items:
            if not isinstance(degree, int) or not isinstance(dim, int):
                raise TypeError(f"degrees and dimensions must be integers, got {degree!r}: {dim!r}")
            if dim < 0:
                raise ValueError(f"negative dimension {dim} in degree {degree}")
            if dim:
                clean[degree] = clean.get(degree, 0) + dim
        self._entries = dict(sorted(clean.items()))

    def __getitem__(self, degree: int) -> int:
        return self._entries[degree]

    def __iter__(self) -> Iterator[int]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __hash__(self) -> int:
        return hash(tuple(self._entries.items()))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Mapping):
            return self._entries == {k: v for k, v in other.items() if v}
        return NotImplemented

    def __repr__(self) -> str:
        return f"GradedDims({self._entries})"

    def dim(self, degree: int) -> int:
        return self._entries.get(degree, 0)

    @property
    def total(self) -> int:
        return sum(self._entries.values())

    def __add__(self, other: Mapping[int, int]) -> GradedDims:
        merged = dict(self._entries)
        for degree, dim in other.items():
            merged[degree] = merged.get(degree, 0) + dim
        return GradedDims(merged)

    def shift(self, s: int) -> GradedDims:
        return GradedDims({d + s: v for d, v in self._entries.items()})

    def to_json(self) -> dict[str, int]:
        return {str(d): v for d, v in self._entries.items()}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> GradedDims:
        return cls({int(k): int(v) for k, v in data.items()})


def shift_degrees(g: Mapping[int, int], s: int) -> GradedDims:
    """Move every entry of ``g`` from degree d to degree d + s."""
    return GradedDims(g).shift(s)


# --- space models -----------------------------------------------------------


class SpaceModel:
    """Base class for the handful of spaces whose homology we tabulate."""


@dataclass(frozen=True)
class Point(SpaceModel):
    def __str__(self) -> str:
        return "pt"


@dataclass(frozen=True)
class Sphere(SpaceModel):
    m: int

    def __post_init__(self):
        if self.m < 0:
            raise ValueError(f"sphere dimension must be >= 0, got {self.m}")

    def __str__(self) -> str:
        return f"S^{self.m}"


@dataclass(frozen=True)
class Ball(SpaceModel):
    m: int

    def __post_init__(self):
        if self.m < 0:
            raise ValueError(f"ball dimension must be >= 0, got {self.m}")

    def __str__(self) -> str:
        return f"B^{self.m}"


@dataclass(frozen=True)
class BallPair(SpaceModel):
    """The pair (B^m, S^{m-1}); its homology is the relative homology."""

    m: int

    def __post_init__(self):
        if self.m < 0:
            raise ValueError(f"ball dimension must be >= 0, got {self.m}")

    def __str__(self) -> str:
        return f"(B^{self.m},S^{self.m - 1})"


@dataclass(frozen=True)
class DisjointUnion(SpaceModel):
    parts: tuple[SpaceModel, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if not self.parts:
            raise ValueError("DisjointUnion needs at least one part")

    def __str__(self) -> str:
        return " + ".join(str(p) for p in self.parts)


@dataclass(frozen=True)
class Opaque(SpaceModel):
    """A space we know exists but whose homology is not tabulated.

    Used for the non-ball component of some real Lagrangians.
    """

    label: str

    def __str__(self) -> str:
        return f"<{self.label}>"


class UnsupportedSpace(ValueError):
    pass


def homology(space: SpaceModel) -> GradedDims:
    """H_*(space; Z/2) for the tabulated spaces."""
    match space:
        case Point():
            return GradedDims({0: 1})
        case Sphere(m=0):
            return GradedDims({0: 2})
        case Sphere(m=m):
            return GradedDims({0: 1, m: 1})
        case Ball():
            return GradedDims({0: 1})
        case BallPair(m=m):
            return GradedDims({m: 1})
        case DisjointUnion(parts=parts):
            out = GradedDims()
            for part in parts:
                out = out + homology(part)
            return out
    raise UnsupportedSpace(f"no homology table for {space!r}")


def space_to_json(space: SpaceModel) -> object:
    match space:
        case DisjointUnion(parts=parts):
            return {"kind": "DisjointUnion", "parts": [space_to_json(p) for p in parts]}
        case Opaque(label=label):
            return {"kind": "Opaque", "label": label}
        case Point():
            return {"kind": "Point"}
    return {"kind": type(space).__name__, "m": space.m}
