"""Weighted translation operators driven by a two-sided index sequence.

The operator at step n multiplies a running product of translated weight
values into the translate of the argument by the sequence's reflected n-th
point.  Two product conventions are supported: the exclusive convention takes
n factors (indices 0..n-1) and makes the step operator the n-th iterate of
the single-step operator on group models; the inclusive convention takes n+1
factors (indices 0..n).  The exclusive convention is the default everywhere.

Weight factors at a point x are translated values, i.e. integrals of the
weight against delta_x convolved with the reflected sequence point; closed
weight forms evaluate at any label, never falling back to zero.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Mapping

from .errors import NotCentral, WindowOverflow
from .functions import SparseFunction, translate
from .hypergroups import HypergroupModel


class ProductConvention(enum.Enum):
    INCLUSIVE = "inclusive"              # n+1 factors, indices 0..n
    ITERATE_EXCLUSIVE = "iterate_exclusive"  # n factors, indices 0..n-1

    @property
    def factors(self):
        """Number of weight factors used at step n."""
        return (lambda n: n + 1) if self is ProductConvention.INCLUSIVE \
            else (lambda n: n)


DEFAULT_CONVENTION = ProductConvention.ITERATE_EXCLUSIVE


@dataclass(frozen=True)
class Weight:
    """Bounded positive weight given by a closed form.

    form is one of "constant", "step" (low value up to the threshold, high
    value above it), "table" (explicit values with a default elsewhere), or
    "geometric" (base * ratio^label).
    """

    form: str
    value: float = 1.0
    threshold: int = 0
    low: float = 1.0
    high: float = 1.0
    entries: tuple[tuple[int, float], ...] = ()
    default: float = 1.0
    base: float = 1.0
    ratio: float = 1.0

    def __post_init__(self):
        positives = {"constant": (self.value,), "step": (self.low, self.high),
                     "table": tuple(v for _, v in self.entries) + (self.default,),
                     "geometric": (self.base, self.ratio)}
        if self.form not in positives:
            raise ValueError(f"unknown weight form {self.form!r}")
        for v in positives[self.form]:
            if not (v > 0.0 and math.isfinite(v)):
                raise ValueError("weight parameters must be finite and positive")

    def __call__(self, label: int) -> float:
        if self.form == "constant":
            return self.value
        if self.form == "step":
            return self.low if label <= self.threshold else self.high
        if self.form == "table":
            return self._lookup.get(label, self.default)
        return self.base * self.ratio**label

    @property
    def _lookup(self) -> dict[int, float]:
        d = self.__dict__.get("_lookup_cache")
        if d is None:
            d = dict(self.entries)
            object.__setattr__(self, "_lookup_cache", d)
        return d

    def sup_over(self, labels) -> float:
        vals = [self(x) for x in labels]
        if self.form == "table":
            vals.append(self.default)
        return max(vals)

    def inf_over(self, labels) -> float:
        vals = [self(x) for x in labels]
        if self.form == "table":
            vals.append(self.default)
        return min(vals)


def constant_weight(value: float) -> Weight:
    return Weight(form="constant", value=float(value))


def step_weight(threshold: int, low: float, high: float) -> Weight:
    return Weight(form="step", threshold=int(threshold), low=float(low), high=float(high))


def table_weight(values: Mapping[int, float], default: float = 1.0) -> Weight:
    return Weight(form="table",
                  entries=tuple(sorted((int(k), float(v)) for k, v in values.items())),
                  default=float(default))


def geometric_weight(base: float, ratio: float) -> Weight:
    return Weight(form="geometric", base=float(base), ratio=float(ratio))


class EtaSequence:
    """Two-sided sequence of window points with a(0) the identity and
    a(-n) the involution of a(n)."""

    is_central = False

    def __call__(self, n: int) -> int:
        raise NotImplementedError


class CenterPowers(EtaSequence):
    """a(n) = n-th power of a fixed center element."""

    is_central = True

    def __init__(self, model: HypergroupModel, z: int):
        if z not in model.center_elements().members:
            raise NotCentral(f"label {z} is not central")
        self.model = model
        self.z = z
        self._pos = [model.identity]          # powers of z
        self._neg = [model.identity]          # powers of the involution of z

    def __call__(self, n: int) -> int:
        cache, base = (self._pos, self.z) if n >= 0 else (self._neg,
                                                          self.model.involution(self.z))
        k = abs(n)
        while len(cache) <= k:
            cache.append(self.model.point_product(cache[-1], base))
        return cache[k]


class TableEta(EtaSequence):
    """Explicit entries for positive indices; negatives go through the involution."""

    def __init__(self, model: HypergroupModel, entries: Mapping[int, int]):
        self.model = model
        self._entries = {int(k): int(v) for k, v in entries.items()}
        for k, v in self._entries.items():
            if k < 1:
                raise ValueError("table entries are indexed from 1")
            model._require_in_window(v)
        self.is_central = all(v in model.center_elements().members
                              for v in self._entries.values())

    def __call__(self, n: int) -> int:
        if n == 0:
            return self.model.identity
        entry = self._entries.get(abs(n))
        if entry is None:
            raise WindowOverflow(f"sequence index {n} beyond the declared table")
        return entry if n > 0 else self.model.involution(entry)


def center_powers(model: HypergroupModel, z: int) -> CenterPowers:
    return CenterPowers(model, z)


def eta_from_table(model: HypergroupModel, entries: Mapping[int, int]) -> TableEta:
    return TableEta(model, entries)


def translated_weight(model: HypergroupModel, w: Weight, x: int, y: int) -> float:
    """Integral of the weight against delta_x * delta_y using exact atoms."""
    mu = model.raw_convolve_points(x, y)
    s = 0.0
    for u, m in mu.atoms:
        s += w(u) * m
    return s


def weight_product(model: HypergroupModel, w: Weight, eta: EtaSequence,
                   x: int, n: int,
                   convention: ProductConvention = DEFAULT_CONVENTION) -> float:
    """Running product of translated weight values at x (the step-n cocycle)."""
    count = convention.factors(n)
    acc = 1.0
    for j in range(count - 1, -1, -1):
        acc = translated_weight(model, w, x, eta(-j)) * acc
    return acc


def shifted_weight_product(model: HypergroupModel, w: Weight, eta: EtaSequence,
                           x: int, n: int,
                           convention: ProductConvention = DEFAULT_CONVENTION) -> float:
    """The step-n product evaluated at the point x shifted by the n-th
    sequence element (central sequences only)."""
    if not eta.is_central:
        raise NotCentral("shifted products need a central sequence")
    return weight_product(model, w, eta, model.point_product(x, eta(n)), n, convention)


def apply_weighted_translation(model: HypergroupModel, f: SparseFunction, w: Weight,
                               eta: EtaSequence, n: int,
                               convention: ProductConvention = DEFAULT_CONVENTION
                               ) -> SparseFunction:
    """Step-n operator: weight product times the translate by the reflected point.

    Per point the factors multiply innermost-first onto the translated value,
    matching the float rounding of iterating the single-step operator.
    """
    t = translate(model, f, eta(-n))
    count = convention.factors(n)
    out: dict[int, float] = {}
    for x, tv in t.values:
        val = tv
        for j in range(count - 1, -1, -1):
            val = translated_weight(model, w, x, eta(-j)) * val
        if val != 0.0:
            out[x] = val
    return SparseFunction.from_dict(out)


def apply_single_step(model: HypergroupModel, f: SparseFunction, a: int,
                      w: Weight) -> SparseFunction:
    """One weighted translation: pointwise weight times translate by the
    involution of a."""
    t = translate(model, f, model.involution(a))
    return SparseFunction.from_dict({x: w(x) * tv for x, tv in t.values})


def iterate_single_step(model: HypergroupModel, f: SparseFunction, a: int,
                        w: Weight, n: int) -> SparseFunction:
    g = f
    for _ in range(n):
        g = apply_single_step(model, g, a, w)
    return g


def apply_right_inverse(model: HypergroupModel, f: SparseFunction, w: Weight,
                        eta: EtaSequence, n: int,
                        convention: ProductConvention = DEFAULT_CONVENTION
                        ) -> SparseFunction:
    """Right inverse of the step-n operator along a central sequence:
    divide by the weight product and shift the support back."""
    if not isinstance(eta, CenterPowers):
        raise NotCentral("the right inverse needs a center-powers sequence")
    out: dict[int, float] = {}
    for u, fv in f.values:
        x = model.point_product(u, eta(-n))
        out[x] = fv / weight_product(model, w, eta, u, n, convention)
    return SparseFunction.from_dict(out)


def hereditary_weight_pair(model: HypergroupModel, x: int, z: int, w: Weight,
                           n: int) -> tuple[float, float]:
    """Forward product over shifts by powers of z (indices 1..n) and the
    reciprocal backward product over shifts by powers of the involution
    (indices 0..n-1)."""
    if z not in model.center_elements().members:
        raise NotCentral(f"label {z} is not central")
    if n < 0:
        raise ValueError("step index must be nonnegative")
    fwd = 1.0
    cur = x
    for _ in range(n):
        cur = model.point_product(cur, z)
        fwd *= w(cur)
    zinv = model.involution(z)
    back = 1.0
    cur = x
    for j in range(n):
        back *= w(cur)
        if j < n - 1:
            cur = model.point_product(cur, zinv)
    return fwd, 1.0 / back
