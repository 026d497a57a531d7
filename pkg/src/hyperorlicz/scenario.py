"""Scenario files: a YAML description of one model plus run settings.

Grammar (top-level keys, unknown keys rejected):

    id: doubling-shift                  # required, nonempty string
    hypergroup:                         # required
      family: integers | dunkl_ramirez | su2 | table
      window: 64                        # required positive bound
      a: 0.5                            # dunkl_ramirez only, in (0, 1/2]
      identity: 0                       # table only
      involution: {0: 0, 1: 2, 2: 1}   # table only
      table:                            # table only: [x, y, {label: mass}]
        - [0, 0, {0: 1.0}]
    young:                              # required
      kind: phi_p | exp_minus_linear | cosh_minus_one | tabulated
      p: 2.0                            # phi_p only, >= 1
      knots: [[0.0, 0.0], [1.0, 0.5]]  # tabulated only
    weight:                             # required
      form: constant | step | table | geometric
      value: 1.5                        # constant
      threshold: 0                      # step (low at labels <= threshold)
      low: 2.0
      high: 0.5
      entries: {0: 2.0, 1: 0.5}        # table
      default: 1.0
      base: 2.0                         # geometric: base * ratio**label
      ratio: 0.5
    eta:                                # optional; needed by sequence commands
      generator: center_powers | table
      z: 1                              # center_powers
      entries: {1: 1, 2: 2}            # table, indexed from 1
    sets:                               # optional, named label lists
      E: [0]
    functions:                          # optional, named sparse functions
      f: {0: 1.0}
    run:                                # optional, all fields defaulted
      horizon: 24
      k_max: 8
      series_cutoff: 40
      rs_bound: 3
      convention: iterate_exclusive | inclusive
      triple_bound: 12                 # associativity triples cap, omit for all

Validation is eager: the hypergroup is built (axioms of table families are
checked on construction), the declared sequence is dry-run over every index
up to the horizon in both directions, and every set and function label must
lie in the window.  Failures raise ScenarioError with the offending path.
"""
from __future__ import annotations

from dataclasses import dataclass

import yaml

from .errors import ScenarioError, WindowOverflow
from .functions import SparseFunction
from .hypergroups import (
    HypergroupModel,
    dunkl_ramirez,
    integer_group,
    su2,
    table_hypergroup,
)
from .operators import (
    DEFAULT_CONVENTION,
    EtaSequence,
    ProductConvention,
    Weight,
    center_powers,
    constant_weight,
    eta_from_table,
    geometric_weight,
    step_weight,
    table_weight,
)
from .orlicz import (
    YoungFunction,
    cosh_minus_one,
    exp_minus_linear,
    phi_p,
    tabulated_young,
)


@dataclass(frozen=True)
class RunSettings:
    horizon: int = 16
    k_max: int = 8
    series_cutoff: int = 40
    rs_bound: int = 3
    convention: ProductConvention = DEFAULT_CONVENTION
    triple_bound: int | None = None


@dataclass(frozen=True)
class Scenario:
    scenario_id: str
    model: HypergroupModel
    phi: YoungFunction
    weight: Weight
    eta: EtaSequence | None
    sets: dict[str, tuple[int, ...]]
    functions: dict[str, SparseFunction]
    run: RunSettings


def _need(mapping, key, path, kind=None):
    if not isinstance(mapping, dict) or key not in mapping:
        raise ScenarioError(f"{path}: missing required key {key!r}")
    value = mapping[key]
    if kind is not None and not isinstance(value, kind):
        raise ScenarioError(f"{path}.{key}: expected {kind.__name__}, "
                            f"got {type(value).__name__}")
    return value


def _no_extras(mapping, allowed, path):
    extra = set(mapping) - set(allowed)
    if extra:
        raise ScenarioError(f"{path}: unknown keys {sorted(extra)!r}")


def _int_labels(mapping, path) -> dict[int, float]:
    out = {}
    for k, v in mapping.items():
        if not isinstance(k, int) or isinstance(k, bool):
            raise ScenarioError(f"{path}: labels must be integers, got {k!r}")
        out[k] = float(v)
    return out


def _build_model(section, path) -> HypergroupModel:
    family = _need(section, "family", path, str)
    window = _need(section, "window", path, int)
    if window < 1:
        raise ScenarioError(f"{path}.window: must be a positive integer")
    if family == "integers":
        _no_extras(section, {"family", "window"}, path)
        return integer_group(window)
    if family == "su2":
        _no_extras(section, {"family", "window"}, path)
        return su2(window)
    if family == "dunkl_ramirez":
        _no_extras(section, {"family", "window", "a"}, path)
        a = float(_need(section, "a", path))
        if not 0.0 < a <= 0.5:
            raise ScenarioError(f"{path}.a: must lie in (0, 1/2]")
        return dunkl_ramirez(a, window)
    if family == "table":
        _no_extras(section, {"family", "window", "identity", "involution", "table"},
                   path)
        identity = section.get("identity", 0)
        involution_raw = _need(section, "involution", path, dict)
        involution = {int(k): int(v) for k, v in involution_raw.items()}
        rows = _need(section, "table", path, list)
        conv = {}
        for i, row in enumerate(rows):
            if not (isinstance(row, list) and len(row) == 3
                    and isinstance(row[2], dict)):
                raise ScenarioError(
                    f"{path}.table[{i}]: expected [x, y, {{label: mass}}]")
            conv[(int(row[0]), int(row[1]))] = _int_labels(
                row[2], f"{path}.table[{i}]")
        try:
            return table_hypergroup(conv, involution, identity=identity)
        except (ValueError, KeyError) as exc:
            raise ScenarioError(f"{path}: table rejected: {exc}") from exc
    raise ScenarioError(f"{path}.family: unknown family {family!r}")


def _build_young(section, path) -> YoungFunction:
    kind = _need(section, "kind", path, str)
    if kind == "phi_p":
        _no_extras(section, {"kind", "p"}, path)
        p = float(_need(section, "p", path))
        if p < 1.0:
            raise ScenarioError(f"{path}.p: must be >= 1")
        return phi_p(p)
    if kind == "exp_minus_linear":
        _no_extras(section, {"kind"}, path)
        return exp_minus_linear()
    if kind == "cosh_minus_one":
        _no_extras(section, {"kind"}, path)
        return cosh_minus_one()
    if kind == "tabulated":
        _no_extras(section, {"kind", "knots"}, path)
        knots = _need(section, "knots", path, list)
        try:
            return tabulated_young([(float(t), float(v)) for t, v in knots])
        except (ValueError, TypeError) as exc:
            raise ScenarioError(f"{path}.knots: {exc}") from exc
    raise ScenarioError(f"{path}.kind: unknown kind {kind!r}")


def _build_weight(section, path) -> Weight:
    form = _need(section, "form", path, str)
    try:
        if form == "constant":
            _no_extras(section, {"form", "value"}, path)
            return constant_weight(float(_need(section, "value", path)))
        if form == "step":
            _no_extras(section, {"form", "threshold", "low", "high"}, path)
            return step_weight(int(_need(section, "threshold", path)),
                               float(_need(section, "low", path)),
                               float(_need(section, "high", path)))
        if form == "table":
            _no_extras(section, {"form", "entries", "default"}, path)
            entries = _int_labels(_need(section, "entries", path, dict),
                                  f"{path}.entries")
            return table_weight(entries, float(section.get("default", 1.0)))
        if form == "geometric":
            _no_extras(section, {"form", "base", "ratio"}, path)
            return geometric_weight(float(_need(section, "base", path)),
                                    float(_need(section, "ratio", path)))
    except ValueError as exc:
        raise ScenarioError(f"{path}: {exc}") from exc
    raise ScenarioError(f"{path}.form: unknown form {form!r}")


def _build_eta(section, path, model: HypergroupModel) -> EtaSequence:
    generator = _need(section, "generator", path, str)
    try:
        if generator == "center_powers":
            _no_extras(section, {"generator", "z"}, path)
            return center_powers(model, int(_need(section, "z", path)))
        if generator == "table":
            _no_extras(section, {"generator", "entries"}, path)
            raw = _need(section, "entries", path, dict)
            entries = {int(k): int(v) for k, v in raw.items()}
            return eta_from_table(model, entries)
    except (ValueError, WindowOverflow) as exc:
        raise ScenarioError(f"{path}: {exc}") from exc
    raise ScenarioError(f"{path}.generator: unknown generator {generator!r}")


def _build_run(section, path) -> RunSettings:
    _no_extras(section, {"horizon", "k_max", "series_cutoff", "rs_bound",
                      "convention", "triple_bound"}, path)
    conv_name = section.get("convention", DEFAULT_CONVENTION.value)
    try:
        convention = ProductConvention(conv_name)
    except ValueError as exc:
        raise ScenarioError(f"{path}.convention: unknown convention "
                            f"{conv_name!r}") from exc
    settings = RunSettings(
        horizon=int(section.get("horizon", 16)),
        k_max=int(section.get("k_max", 8)),
        series_cutoff=int(section.get("series_cutoff", 40)),
        rs_bound=int(section.get("rs_bound", 3)),
        convention=convention,
        triple_bound=(int(section["triple_bound"])
                      if section.get("triple_bound") is not None else None),
    )
    for name in ("horizon", "k_max", "series_cutoff", "rs_bound"):
        if getattr(settings, name) < 1:
            raise ScenarioError(f"{path}.{name}: must be a positive integer")
    return settings


def parse_scenario(data: dict) -> Scenario:
    if not isinstance(data, dict):
        raise ScenarioError("scenario: top level must be a mapping")
    _no_extras(data, {"id", "hypergroup", "young", "weight", "eta", "sets",
                      "functions", "run"}, "scenario")
    scenario_id = _need(data, "id", "scenario", str)
    if not scenario_id:
        raise ScenarioError("scenario.id: must be nonempty")
    model = _build_model(_need(data, "hypergroup", "scenario", dict),
                         "hypergroup")
    phi = _build_young(_need(data, "young", "scenario", dict), "young")
    weight = _build_weight(_need(data, "weight", "scenario", dict), "weight")
    run = _build_run(data.get("run") or {}, "run")
    eta = None
    if "eta" in data and data["eta"] is not None:
        eta = _build_eta(data["eta"], "eta", model)
        for n in range(-run.horizon, run.horizon + 1):
            try:
                point = eta(n)
            except WindowOverflow as exc:
                raise ScenarioError(
                    f"eta: index {n} unreachable within horizon "
                    f"{run.horizon}: {exc}") from exc
            if not model.in_window(point):
                raise ScenarioError(
                    f"eta: index {n} leaves the window (label {point})")
    sets: dict[str, tuple[int, ...]] = {}
    for name, labels in (data.get("sets") or {}).items():
        if not isinstance(labels, list) or not labels:
            raise ScenarioError(f"sets.{name}: must be a nonempty label list")
        vals = tuple(sorted({int(v) for v in labels}))
        for v in vals:
            if not model.in_window(v):
                raise ScenarioError(f"sets.{name}: label {v} outside the window")
        sets[str(name)] = vals
    functions: dict[str, SparseFunction] = {}
    for name, mapping in (data.get("functions") or {}).items():
        if not isinstance(mapping, dict):
            raise ScenarioError(f"functions.{name}: must be a label-value map")
        values = _int_labels(mapping, f"functions.{name}")
        for v in values:
            if not model.in_window(v):
                raise ScenarioError(
                    f"functions.{name}: label {v} outside the window")
        functions[str(name)] = SparseFunction.from_dict(values)
    return Scenario(scenario_id=scenario_id, model=model, phi=phi,
                    weight=weight, eta=eta, sets=sets, functions=functions,
                    run=run)


def load_scenario(path: str) -> Scenario:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = yaml.safe_load(fh)
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario file: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ScenarioError(f"scenario file is not valid YAML: {exc}") from exc
    return parse_scenario(data)
