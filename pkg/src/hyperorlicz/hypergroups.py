"""Discrete hypergroup models backed by finite sparse convolution tables.

A model holds the convolution of point masses for every pair of labels inside
a truncation window, the involution, the identity, the derived right-invariant
measure, and the center.  Exact results whose support leaves the window raise
:class:`~hyperorlicz.errors.WindowOverflow`; nothing is ever truncated
silently.  Models are immutable after construction and all operations are
pure, so instances can be shared freely between threads.

Carrier conventions: families on the nonnegative integers use the labels
``0..window``; the integer-group family uses ``-window..window``; a
table-defined model's carrier is exactly the table's label set.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .errors import (
    EPS_PROB,
    TOL_ASSOC,
    TOL_ATOM,
    NotCentral,
    WindowOverflow,
)


@dataclass(frozen=True)
class SparseMeasure:
    """Finitely supported nonnegative measure, stored as sorted (label, mass) atoms.

    Atoms are strictly positive; zero masses are never stored.  When
    ``probability`` is set the total mass must be 1 within ``EPS_PROB``.
    """

    atoms: tuple[tuple[int, float], ...]
    probability: bool = False

    def __post_init__(self):
        labels = [a[0] for a in self.atoms]
        if labels != sorted(labels) or len(labels) != len(set(labels)):
            raise ValueError("atoms must be sorted by label and unique")
        for _, m in self.atoms:
            if not (m > 0.0) or not math.isfinite(m):
                raise ValueError("atom masses must be finite and strictly positive")
        if self.probability and abs(self.mass() - 1.0) > EPS_PROB:
            raise ValueError(f"probability measure has mass {self.mass()!r}")

    @classmethod
    def from_dict(cls, d: Mapping[int, float], probability: bool = False) -> "SparseMeasure":
        atoms = tuple(sorted((int(x), float(m)) for x, m in d.items() if m != 0.0))
        return cls(atoms, probability)

    def mass(self) -> float:
        return sum(m for _, m in self.atoms)

    def support(self) -> tuple[int, ...]:
        return tuple(x for x, _ in self.atoms)

    def value_at(self, label: int) -> float:
        return self._lookup.get(label, 0.0)

    @property
    def _lookup(self) -> dict[int, float]:
        d = self.__dict__.get("_lookup_cache")
        if d is None:
            d = dict(self.atoms)
            object.__setattr__(self, "_lookup_cache", d)
        return d

    def scaled(self, c: float) -> "SparseMeasure":
        if c == 0.0:
            return SparseMeasure(())
        if c < 0.0:
            raise ValueError("measures cannot carry negative mass")
        return SparseMeasure(tuple((x, c * m) for x, m in self.atoms))

    def pushforward(self, fn: Callable[[int], int]) -> "SparseMeasure":
        return SparseMeasure.from_dict({fn(x): m for x, m in self.atoms}, self.probability)


def point_mass(label: int) -> SparseMeasure:
    return SparseMeasure(((label, 1.0),), probability=True)


def measures_max_deviation(mu: SparseMeasure, nu: SparseMeasure) -> float:
    """Largest per-atom difference between two measures."""
    labels = set(mu.support()) | set(nu.support())
    if not labels:
        return 0.0
    return max(abs(mu.value_at(x) - nu.value_at(x)) for x in labels)


def is_point_mass_at(mu: SparseMeasure, label: int, tol: float = TOL_ATOM) -> bool:
    if abs(mu.value_at(label) - 1.0) > tol:
        return False
    return all(m <= tol for x, m in mu.atoms if x != label)


@dataclass(frozen=True)
class AxiomViolation:
    axiom: str                 # "probability-mass" | "identity" | "support-identity"
    #                          | "adjoint" | "associativity" | "involution"
    witness: tuple[int, ...]
    detail: str


@dataclass(frozen=True)
class CenterReport:
    """Elements whose self-convolution with their involution is the identity mass."""

    members: tuple[int, ...]
    horizon: int


class _Family:
    """Closed-form description of one hypergroup family (untruncated)."""

    name: str = ""
    params: dict = {}
    signed = False  # carrier includes negative labels

    def involution(self, x: int) -> int:
        raise NotImplementedError

    def raw_convolve(self, x: int, y: int) -> dict[int, float]:
        raise NotImplementedError

    def identity_atom_exact(self, x: int):
        """(delta_x * delta_{x^-})({e}) in exact rational arithmetic."""
        raise NotImplementedError

    def carrier(self, window: int) -> tuple[int, ...]:
        if self.signed:
            return tuple(range(-window, window + 1))
        return tuple(range(0, window + 1))

    def translate_reach_ok(self, f_support: Iterable[int], y: int, window: int) -> bool:
        """True when the exact support of f translated by y stays in the window."""
        raise NotImplementedError


class _DunklRamirez(_Family):
    """Hermitian family on the nonnegative integers with parameter 0 < a <= 1/2.

    Distinct points convolve to the point mass at their maximum; equal points
    spread geometrically over the initial segment.
    """

    def __init__(self, a: float):
        if not (0.0 < a <= 0.5):
            raise ValueError("parameter a must lie in (0, 1/2]")
        self.a = float(a)
        self.name = "dunkl_ramirez"
        self.params = {"a": self.a}

    def involution(self, x):
        return x

    def raw_convolve(self, r, s):
        if r != s:
            return {max(r, s): 1.0}
        if r == 0:
            return {0: 1.0}
        a = self.a
        out = {0: a**r / (1.0 - a)}
        for k in range(1, r):
            out[k] = a ** (r - k)
        top = (1.0 - 2.0 * a) / (1.0 - a)
        if top > 0.0:
            out[r] = top
        return out

    def identity_atom_exact(self, x):
        if x == 0:
            return Fraction(1)
        a = Fraction(self.a)
        return a**x / (1 - a)

    def translate_reach_ok(self, f_support, y, window):
        # Contributing points never exceed max(support, y): distinct labels
        # convolve to the point mass at the maximum, equal labels stay below it.
        return True


class _SU2(_Family):
    """Hermitian family on the nonnegative integers from dimension-weighted
    tensor decompositions: supports run every second label between the
    difference and the sum."""

    def __init__(self):
        self.name = "su2"
        self.params = {}

    def involution(self, x):
        return x

    def raw_convolve(self, m, n):
        den = float((m + 1) * (n + 1))
        return {k: (k + 1) / den for k in range(abs(m - n), m + n + 1, 2)}

    def identity_atom_exact(self, x):
        return Fraction(1, (x + 1) * (x + 1))

    def translate_reach_ok(self, f_support, y, window):
        sup = max(f_support, default=0)
        return sup + y <= window


class _IntegerGroup(_Family):
    """The group of integers viewed as a hypergroup; counting measure."""

    signed = True

    def __init__(self):
        self.name = "integer_group"
        self.params = {}

    def involution(self, x):
        return -x

    def raw_convolve(self, x, y):
        return {x + y: 1.0}

    def identity_atom_exact(self, x):
        return Fraction(1)

    def translate_reach_ok(self, f_support, y, window):
        return all(-window <= u - y <= window for u in f_support)


class _TableFamily(_Family):
    """Finite hypergroup given by an explicit table; the carrier is the whole space."""

    def __init__(self, conv, involution_map, identity, name="table"):
        self.name = name
        self.params = {}
        self._conv = conv
        self._inv = involution_map
        self._identity = identity
        labels = sorted(involution_map)
        self._carrier = tuple(labels)
        self.signed = any(x < 0 for x in labels)

    def involution(self, x):
        return self._inv[x]

    def raw_convolve(self, x, y):
        return dict(self._conv[(x, y)])

    def identity_atom_exact(self, x):
        v = self._conv[(x, self._inv[x])].get(self._identity, 0.0)
        if v <= 0.0:
            raise ValueError(f"table row ({x},{self._inv[x]}) has no identity atom; "
                             "cannot derive an invariant measure")
        return Fraction(v)

    def carrier(self, window):
        return self._carrier

    def translate_reach_ok(self, f_support, y, window):
        return True  # finite carrier: the table is the whole space


class HypergroupModel:
    """Windowed model of a discrete hypergroup with an eagerly built table.

    The table stores the exact convolution of every pair of window points.
    Pairs whose support leaves the window are kept (the exact atoms are still
    needed for translation and for the invariant measure) but flagged, and
    :meth:`convolve_points` refuses to return them.
    """

    def __init__(self, family: _Family, window: int):
        if window < 1:
            raise ValueError("window bound must be at least 1")
        self.family = family.name
        self.params = dict(family.params)
        self.window = int(window)
        self.identity = getattr(family, "_identity", 0)
        self._fam = family
        self.carrier: tuple[int, ...] = family.carrier(window)
        cset = set(self.carrier)
        if self.identity not in cset:
            raise ValueError("identity label missing from carrier")

        table: dict[tuple[int, int], SparseMeasure] = {}
        fits: dict[tuple[int, int], bool] = {}
        for x in self.carrier:
            for y in self.carrier:
                raw = family.raw_convolve(x, y)
                mu = SparseMeasure.from_dict(raw)
                table[(x, y)] = mu
                fits[(x, y)] = all(u in cset for u in mu.support())
        self._table = table
        self._fits = fits

        # Right-invariant measure normalised at the identity: the reciprocal
        # of the identity atom of delta_x * delta_{x^-}, computed in exact
        # rational arithmetic so closed-form weights come out exact.
        haar: dict[int, float] = {}
        for x in self.carrier:
            haar[x] = float(1 / family.identity_atom_exact(x))
        if abs(haar[self.identity] - 1.0) > TOL_ATOM:
            raise ValueError("invariant measure is not normalised at the identity")
        self.haar: dict[int, float] = haar

        members = tuple(
            x for x in self.carrier
            if is_point_mass_at(table[(x, self.involution(x))], self.identity)
            and is_point_mass_at(table[(self.involution(x), x)], self.identity)
        )
        self._center = CenterReport(members=members, horizon=self.window)

    # -- basic structure ---------------------------------------------------

    def involution(self, x: int) -> int:
        return self._fam.involution(x)

    def in_window(self, label: int) -> bool:
        return (self.carrier[0] <= label <= self.carrier[-1]) and (
            label in self._haar_keys)

    @property
    def _haar_keys(self):
        k = getattr(self, "_haar_keyset", None)
        if k is None:
            k = set(self.carrier)
            self._haar_keyset = k
        return k

    def _require_in_window(self, *labels: int) -> None:
        for x in labels:
            if x not in self._haar_keys:
                raise ValueError(f"label {x} lies outside the truncation window")

    def haar_weight(self, x: int) -> float:
        self._require_in_window(x)
        return self.haar[x]

    # -- convolution -------------------------------------------------------

    def raw_convolve_points(self, x: int, y: int) -> SparseMeasure:
        """Exact convolution of two point masses, support possibly off-window."""
        self._require_in_window(x, y)
        return self._table[(x, y)]

    def convolve_points(self, x: int, y: int) -> SparseMeasure:
        self._require_in_window(x, y)
        if not self._fits[(x, y)]:
            raise WindowOverflow(
                f"support of point convolution ({x},{y}) leaves the window "
                f"[{self.carrier[0]},{self.carrier[-1]}]")
        mu = self._table[(x, y)]
        return SparseMeasure(mu.atoms, probability=abs(mu.mass() - 1.0) <= EPS_PROB)

    def convolve_measures(self, mu: SparseMeasure, nu: SparseMeasure) -> SparseMeasure:
        acc: dict[int, float] = {}
        for x, mx in mu.atoms:
            for y, my in nu.atoms:
                if not self._fits.get((x, y), False):
                    raise WindowOverflow(
                        f"measure convolution needs off-window pair ({x},{y})")
                for u, w in self._table[(x, y)].atoms:
                    acc[u] = acc.get(u, 0.0) + mx * my * w
        return SparseMeasure.from_dict(acc, probability=mu.probability and nu.probability)

    def set_convolve(self, a: Iterable[int], b: Iterable[int]) -> frozenset[int]:
        """Union of supports of the pairwise point convolutions."""
        out: set[int] = set()
        for x in sorted(set(a)):
            for y in sorted(set(b)):
                self._require_in_window(x, y)
                if not self._fits[(x, y)]:
                    raise WindowOverflow(
                        f"set convolution needs off-window support at pair ({x},{y})")
                out.update(self._table[(x, y)].support())
        return frozenset(out)

    # -- center ------------------------------------------------------------

    def center_elements(self) -> CenterReport:
        return self._center

    def point_product(self, x: int, z: int) -> int:
        """The single support point of delta_x * delta_z for central z."""
        if z not in self._center.members:
            raise NotCentral(f"label {z} is not in the center")
        self._require_in_window(x)
        supp = self._table[(x, z)].support()
        if len(supp) != 1:
            raise NotCentral(
                f"convolution with center label {z} is not a point mass at ({x},{z})")
        p = supp[0]
        if p not in self._haar_keys:
            raise WindowOverflow(f"point product {x}*{z} leaves the window")
        return p

    def power_center_point(self, z: int, n: int) -> int:
        """n-fold product of a central point with itself (n >= 0)."""
        if n < 0:
            raise ValueError("power index must be nonnegative")
        if z not in self._center.members:
            raise NotCentral(f"label {z} is not in the center")
        cur = self.identity
        for _ in range(n):
            cur = self.point_product(cur, z)
        return cur

    def translate_reach_ok(self, f_support: Iterable[int], y: int) -> bool:
        return self._fam.translate_reach_ok(tuple(f_support), y, self.window)

    # -- verification ------------------------------------------------------

    def verify_axioms(self, triple_bound: int) -> list[AxiomViolation]:
        """Check the defining axioms on all labels within ``triple_bound``.

        Probability masses, the identity law, the support-identity equivalence
        and the adjoint law are checked on the exact (untruncated) table.
        Associativity is checked on triples whose intermediate supports stay
        inside the window; out-of-window triples are skipped.
        """
        out: list[AxiomViolation] = []
        e = self.identity
        pts = [x for x in self.carrier if abs(x) <= triple_bound]

        for x in pts:
            xi = self.involution(x)
            if xi not in self._haar_keys or self.involution(xi) != x:
                out.append(AxiomViolation("involution", (x,),
                                          f"involution of {x} does not fold back"))

        for x in pts:
            for y in pts:
                mu = self._table[(x, y)]
                dm = abs(mu.mass() - 1.0)
                if dm > EPS_PROB:
                    out.append(AxiomViolation(
                        "probability-mass", (x, y), f"mass deviates by {dm:.3e}"))

        for x in pts:
            for (mu, tag) in ((self._table[(x, e)], "right"),
                              (self._table[(e, x)], "left")):
                if not is_point_mass_at(mu, x):
                    out.append(AxiomViolation(
                        "identity", (x,), f"{tag} identity law fails at {x}"))

        for x in pts:
            for y in pts:
                has_e = self._table[(x, y)].value_at(e) > TOL_ATOM
                if has_e != (x == self.involution(y)):
                    out.append(AxiomViolation(
                        "support-identity", (x, y),
                        "identity atom present iff x equals the involution of y"))

        for x in pts:
            for y in pts:
                lhs = self._table[(x, y)].pushforward(self.involution)
                rhs = self._table[(self.involution(y), self.involution(x))]
                dev = measures_max_deviation(lhs, rhs)
                if dev > TOL_ATOM:
                    out.append(AxiomViolation(
                        "adjoint", (x, y), f"adjoint law deviates by {dev:.3e}"))

        for x in pts:
            for y in pts:
                for z in pts:
                    try:
                        left = self.convolve_measures(
                            self.convolve_points(x, y), point_mass(z))
                        right = self.convolve_measures(
                            point_mass(x), self.convolve_points(y, z))
                    except WindowOverflow:
                        continue
                    dev = measures_max_deviation(left, right)
                    if dev > TOL_ASSOC:
                        out.append(AxiomViolation(
                            "associativity", (x, y, z),
                            f"triple product deviates by {dev:.3e}"))
        return out


def dunkl_ramirez(a: float, window: int) -> HypergroupModel:
    """Model with point-max convolution off the diagonal and geometric spread on it."""
    return HypergroupModel(_DunklRamirez(a), window)


def su2(window: int) -> HypergroupModel:
    """Model with every-second-label supports between difference and sum."""
    return HypergroupModel(_SU2(), window)


def integer_group(window: int) -> HypergroupModel:
    """The integers under addition, windowed to ``-window..window``."""
    return HypergroupModel(_IntegerGroup(), window)


def table_hypergroup(conv: Mapping[tuple[int, int], Mapping[int, float]],
                     involution_map: Mapping[int, int],
                     identity: int = 0,
                     validate: bool = True,
                     triple_bound: int | None = None) -> HypergroupModel:
    """Finite hypergroup from an explicit convolution table.

    ``conv`` must contain every ordered pair of labels.  With ``validate``
    (the default) the axioms are checked on load and any violation is a hard
    error; pass ``validate=False`` to build a possibly broken model for
    diagnostic use with :meth:`HypergroupModel.verify_axioms`.
    """
    labels = sorted(involution_map)
    for x in labels:
        for y in labels:
            if (x, y) not in conv:
                raise ValueError(f"table is missing the pair ({x},{y})")
    fam = _TableFamily({k: dict(v) for k, v in conv.items()},
                       dict(involution_map), identity)
    window = max(abs(x) for x in labels) if labels else 1
    fam._identity = identity
    model = HypergroupModel(fam, max(window, 1))
    model.identity = identity
    if validate:
        bound = triple_bound if triple_bound is not None else max(abs(x) for x in labels)
        violations = model.verify_axioms(bound)
        if violations:
            first = violations[0]
            raise ValueError(
                f"table violates hypergroup axioms ({len(violations)} findings; "
                f"first: {first.axiom} at {first.witness}: {first.detail})")
    return model
