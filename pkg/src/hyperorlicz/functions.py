"""Finitely supported real functions on a windowed hypergroup model.

Translation is defined through the convolution table: the translate of f by y
at x is the integral of f against delta_x * delta_y.  Exact atoms are used
even when a pair's support leaves the window; what must stay inside the
window is the support of the *result*, and a translate whose true support
would stick out raises WindowOverflow.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import WindowOverflow
from .hypergroups import HypergroupModel, SparseMeasure


@dataclass(frozen=True)
class SparseFunction:
    """Sorted (label, value) pairs; zero values are never stored."""

    values: tuple[tuple[int, float], ...]

    def __post_init__(self):
        labels = [v[0] for v in self.values]
        if labels != sorted(labels) or len(labels) != len(set(labels)):
            raise ValueError("values must be sorted by label and unique")
        for _, v in self.values:
            if v == 0.0 or not math.isfinite(v):
                raise ValueError("stored values must be finite and nonzero")

    @classmethod
    def from_dict(cls, d: Mapping[int, float]) -> "SparseFunction":
        return cls(tuple(sorted((int(x), float(v)) for x, v in d.items() if v != 0.0)))

    def value_at(self, label: int) -> float:
        return self._lookup.get(label, 0.0)

    @property
    def _lookup(self) -> dict[int, float]:
        d = self.__dict__.get("_lookup_cache")
        if d is None:
            d = dict(self.values)
            object.__setattr__(self, "_lookup_cache", d)
        return d

    def support(self) -> tuple[int, ...]:
        return tuple(x for x, _ in self.values)

    def is_zero(self) -> bool:
        return not self.values

    def scale(self, c: float) -> "SparseFunction":
        return SparseFunction.from_dict({x: c * v for x, v in self.values})

    def __add__(self, other: "SparseFunction") -> "SparseFunction":
        acc = dict(self.values)
        for x, v in other.values:
            acc[x] = acc.get(x, 0.0) + v
        return SparseFunction.from_dict(acc)

    def __sub__(self, other: "SparseFunction") -> "SparseFunction":
        acc = dict(self.values)
        for x, v in other.values:
            acc[x] = acc.get(x, 0.0) - v
        return SparseFunction.from_dict(acc)

    def pointwise_product(self, other: "SparseFunction") -> "SparseFunction":
        small, big = (self, other) if len(self.values) <= len(other.values) else (other, self)
        return SparseFunction.from_dict(
            {x: v * big.value_at(x) for x, v in small.values})

    def restrict(self, labels: Iterable[int]) -> "SparseFunction":
        keep = set(labels)
        return SparseFunction(tuple((x, v) for x, v in self.values if x in keep))

    def abs_values(self) -> "SparseFunction":
        return SparseFunction(tuple((x, abs(v)) for x, v in self.values))

    def max_abs(self) -> float:
        return max((abs(v) for _, v in self.values), default=0.0)


ZERO_FUNCTION = SparseFunction(())


def indicator(labels: Iterable[int]) -> SparseFunction:
    return SparseFunction(tuple((int(x), 1.0) for x in sorted(set(labels))))


def translate(model: HypergroupModel, f: SparseFunction, y: int) -> SparseFunction:
    """Translate of f by the window point y through the convolution table."""
    model._require_in_window(y)
    if f.is_zero():
        return ZERO_FUNCTION
    if not model.translate_reach_ok(f.support(), y):
        raise WindowOverflow(
            f"translate by {y} has support outside the window for "
            f"support {f.support()}")
    out: dict[int, float] = {}
    for x in model.carrier:
        mu = model.raw_convolve_points(x, y)
        s = 0.0
        for u, fv in f.values:
            m = mu.value_at(u)
            if m != 0.0:
                s += fv * m
        if s != 0.0:
            out[x] = s
    return SparseFunction.from_dict(out)


def convolve_fn_measure(model: HypergroupModel, f: SparseFunction,
                        mu: SparseMeasure) -> SparseFunction:
    """Convolution of a function with a measure: integrate translates of f
    against the involuted atoms of mu.  Against a unit point mass at the
    involution of y this reproduces translate(f, y) atom by atom."""
    acc: dict[int, float] = {}
    for y, my in mu.atoms:
        t = translate(model, f, model.involution(y))
        for x, tv in t.values:
            acc[x] = acc.get(x, 0.0) + my * tv
    return SparseFunction.from_dict(acc)


def integrate_haar(model: HypergroupModel, f: SparseFunction) -> float:
    return sum(v * model.haar[x] for x, v in f.values)


def measure_of_set(model: HypergroupModel, labels: Iterable[int]) -> float:
    return sum(model.haar_weight(x) for x in sorted(set(labels)))


def sup_on_set(f: SparseFunction, labels: Iterable[int]) -> float:
    """Largest absolute value of f on the given labels; 0 on the empty set."""
    return max((abs(f.value_at(x)) for x in set(labels)), default=0.0)
