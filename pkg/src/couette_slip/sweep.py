"""Parameter sweeps producing stability maps, with deterministic CSV/JSON output."""
from __future__ import annotations

import csv
import io
import itertools
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from threadpoolctl import threadpool_limits

from couette_slip.criteria import NormForm, SquaredForm, check
from couette_slip.eigen import DEFAULT_KMAX, DEFAULT_N, DEFAULT_TOL, spectral_abscissa
from couette_slip.errors import CouetteError, InvalidInput
from couette_slip.params import CaseI, CaseII, FlowConfig

CriteriaOnly = "CriteriaOnly"
Full = "Full"
EigenOnUnknown = "EigenOnUnknown"
POLICIES = (CriteriaOnly, Full, EigenOnUnknown)

NumericallyStable = "NumericallyStable"
NumericallyUnstable = "NumericallyUnstable"
UnknownClass = "Unknown"
ErrorClass = "Error"

DEFAULT_BUDGET = 100_000
SCHEMA = 1

CASE_AXES = {
    CaseI: ("mu", "alpha", "a_minus_b"),
    CaseII: ("mu", "alpha0", "alpha1", "a_minus_b"),
}
DEFAULT_FIXED = {"mu": 1.0, "alpha": 0.0, "alpha0": 0.0, "alpha1": 0.0, "a_minus_b": 1.0}


@dataclass(frozen=True)
class Axis:
    name: str
    lo: float
    hi: float
    count: int

    def values(self):
        return np.linspace(self.lo, self.hi, self.count)


@dataclass(frozen=True)
class SweepGrid:
    case: str
    axes: tuple
    fixed: dict = field(default_factory=dict)
    kmax: int = DEFAULT_KMAX
    N: int = DEFAULT_N
    tol: float = DEFAULT_TOL
    convention: str = NormForm
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.case not in CASE_AXES:
            raise InvalidInput(f"unknown case {self.case!r}")
        names = CASE_AXES[self.case]
        axes = tuple(a if isinstance(a, Axis) else Axis(*a) for a in self.axes)
        object.__setattr__(self, "axes", axes)
        if not 1 <= len(axes) <= 3:
            raise InvalidInput("a sweep needs between one and three axes")
        seen = set()
        for a in axes:
            if a.name not in names:
                raise InvalidInput(f"axis {a.name!r} is not a parameter of case {self.case}")
            if a.name in seen:
                raise InvalidInput(f"axis {a.name!r} repeated")
            seen.add(a.name)
            if a.count < 2:
                raise InvalidInput(f"axis {a.name!r} needs at least 2 points")
            if not (math.isfinite(a.lo) and math.isfinite(a.hi)):
                raise InvalidInput(f"axis {a.name!r} has a non-finite range")
        for key in self.fixed:
            if key not in names:
                raise InvalidInput(f"fixed parameter {key!r} is not a parameter of case {self.case}")
        if self.convention not in (NormForm, SquaredForm):
            raise InvalidInput(f"unknown Poincare convention {self.convention!r}")
        if self.kmax < 1 or self.N < 8 or not self.tol > 0:
            raise InvalidInput("kmax >= 1, N >= 8 and tol > 0 are required")
        if self.size > self.budget:
            raise InvalidInput(f"sweep has {self.size} points, budget is {self.budget}")

    @property
    def size(self):
        return math.prod(a.count for a in self.axes)

    @property
    def columns(self):
        return CASE_AXES[self.case]

    def points(self):
        """Parameter dicts in row-major order (last axis fastest)."""
        base = {n: float(self.fixed.get(n, DEFAULT_FIXED[n])) for n in self.columns}
        out = []
        for combo in itertools.product(*(a.values() for a in self.axes)):
            p = dict(base)
            for a, v in zip(self.axes, combo):
                p[a.name] = float(v)
            out.append(p)
        return out

    def to_dict(self):
        return {"case": self.case,
                "axes": [{"name": a.name, "lo": a.lo, "hi": a.hi, "count": a.count} for a in self.axes],
                "fixed": dict(sorted(self.fixed.items())), "kmax": self.kmax, "N": self.N,
                "tol": self.tol, "convention": self.convention, "budget": self.budget}


def point_config(case, p) -> FlowConfig:
    if case == CaseI:
        return FlowConfig.case1(p["mu"], p["alpha"], p["a_minus_b"], 0.0)
    return FlowConfig.case2(p["mu"], p["alpha0"], p["alpha1"], p["a_minus_b"], 0.0)


@dataclass(frozen=True)
class SweepRecord:
    index: int
    point: dict
    criterion: object = None  # CriterionResult
    abscissa: object = None   # AbscissaReport
    classification: str = UnknownClass
    error: dict | None = None

    @property
    def margin(self):
        return self.criterion.margin if self.criterion is not None else math.nan

    @property
    def m(self):
        return self.abscissa.m if self.abscissa is not None else math.nan

    @property
    def sound(self):
        """False when a proven-stable point has a non-negative computed abscissa."""
        if self.criterion is None or not self.criterion.proven or self.abscissa is None:
            return True
        return self.abscissa.m < 0

    def to_dict(self):
        return _clean({
            "index": self.index, "point": self.point, "classification": self.classification,
            "criterion": None if self.criterion is None else self.criterion.to_dict(),
            "abscissa": None if self.abscissa is None else self.abscissa.to_dict(),
            "sound": self.sound, "error": self.error,
        })


def evaluate_point(grid: SweepGrid, index: int, p: dict, policy: str) -> SweepRecord:
    with threadpool_limits(limits=1):
        try:
            cfg = point_config(grid.case, p)
            crit = check(cfg, grid.convention)
            rep = None
            if policy == Full or (policy == EigenOnUnknown and not crit.proven):
                rep = spectral_abscissa(cfg, grid.kmax, grid.N, grid.tol)
        except CouetteError as exc:
            return SweepRecord(index, p, classification=ErrorClass,
                               error={"type": type(exc).__name__, "message": str(exc)})
    if crit.proven:
        cls = crit.verdict
    elif rep is not None:
        cls = NumericallyStable if rep.m < 0 else NumericallyUnstable
    else:
        cls = UnknownClass
    return SweepRecord(index, p, crit, rep, cls)


def _evaluate_chunk(args):
    grid, policy, chunk = args
    return [evaluate_point(grid, i, p, policy) for i, p in chunk]


def run_sweep(grid: SweepGrid, policy: str = CriteriaOnly, workers: int = 1) -> list:
    if policy not in POLICIES:
        raise InvalidInput(f"unknown policy {policy!r}")
    if workers < 1:
        raise InvalidInput("workers must be >= 1")
    items = list(enumerate(grid.points()))
    if workers == 1 or len(items) == 1:
        records = _evaluate_chunk((grid, policy, items))
    else:
        chunks = [items[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_evaluate_chunk, [(grid, policy, c) for c in chunks if c])
            records = [r for part in parts for r in part]
    records.sort(key=lambda r: r.index)
    return records


def unsound(records):
    return [r for r in records if not r.sound]


def _fmt(x):
    return "%.17g" % x


def _clean(obj):
    """Replace non-finite floats by strings so the JSON stays standard."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else repr(x)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def csv_header(grid: SweepGrid):
    return list(grid.columns) + ["classification", "abscissa", "margin", "criterion"]


def to_csv(grid: SweepGrid, records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(csv_header(grid))
    for r in records:
        crit = r.criterion.criterion_id if r.criterion is not None and r.criterion.proven else ""
        w.writerow([_fmt(r.point[c]) for c in grid.columns]
                   + [r.classification, _fmt(r.m), _fmt(r.margin), crit or ""])
    return buf.getvalue()


def to_json(grid: SweepGrid, records, policy: str) -> str:
    doc = {"schema": SCHEMA, "policy": policy, "grid": _clean(grid.to_dict()),
           "records": [r.to_dict() for r in records],
           "unsound": [r.index for r in unsound(records)]}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def write_text(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
