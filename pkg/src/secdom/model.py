"""Solver-agnostic mixed binary/continuous linear programs.

Coefficients and bounds are kept exact (``int`` or ``fractions.Fraction``);
``math.inf`` marks a missing bound.  Conversion to floating point happens
only in :meth:`LinearModel.to_arrays`, which the solvers consume.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from numbers import Rational

import numpy as np
from scipy import sparse

__all__ = [
    "BINARY",
    "CONTINUOUS",
    "VarDef",
    "LinConstraint",
    "LinearModel",
    "ModelStats",
    "ModelError",
    "MpsFormatError",
    "emit_lp",
    "emit_mps",
    "parse_mps",
    "stats",
]

BINARY = "binary"
CONTINUOUS = "continuous"
SENSES = ("<=", ">=", "=")
INF = math.inf


class ModelError(ValueError):
    pass


class MpsFormatError(ValueError):
    pass


def _exact(value):
    """Normalise to ``int`` when integral, else ``Fraction``; infinities pass."""
    if isinstance(value, bool):
        raise ModelError(f"boolean is not a coefficient: {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        if math.isinf(value):
            return value
        if math.isnan(value):
            raise ModelError("NaN coefficient")
        value = Fraction(value)
    elif isinstance(value, Rational):
        value = Fraction(value)
    elif isinstance(value, str):
        value = Fraction(value)
    else:
        raise ModelError(f"unsupported coefficient type {type(value).__name__}")
    return int(value) if value.denominator == 1 else value


def _fmt(value) -> str:
    if isinstance(value, float):
        if value == INF:
            return "inf"
        if value == -INF:
            return "-inf"
    if isinstance(value, int):
        return str(value)
    f = Fraction(value)
    with localcontext() as ctx:
        ctx.prec = 60
        d = Decimal(f.numerator) / Decimal(f.denominator)
    if Fraction(d) == f:
        return format(d.normalize(), "f")
    # non-terminating: nearest double, not exact
    return repr(float(f))


def _num(token: str):
    try:
        if token.lower() in ("inf", "+inf", "infinity", "1e30", "1e+30"):
            return INF
        if token.lower() in ("-inf", "-infinity", "-1e30", "-1e+30"):
            return -INF
        return _exact(Fraction(token))
    except (ValueError, ZeroDivisionError):
        raise MpsFormatError(f"malformed number {token!r}") from None


@dataclass(frozen=True)
class VarDef:
    name: str
    kind: str = CONTINUOUS
    lower: object = 0
    upper: object = INF


@dataclass(frozen=True)
class LinConstraint:
    name: str
    terms: tuple[tuple[str, object], ...]
    sense: str
    rhs: object


@dataclass(frozen=True)
class ModelStats:
    n_binary: int = 0
    n_continuous: int = 0
    n_constraints: int = 0

    @property
    def n_vars(self) -> int:
        return self.n_binary + self.n_continuous


class LinearModel:
    """Minimisation model built incrementally, in deterministic order."""

    def __init__(self, name: str = "model"):
        self.name = name
        self.vars: list[VarDef] = []
        self.constraints: list[LinConstraint] = []
        self.objective: list[tuple[str, object]] = []
        self.objective_sense = "minimize"
        self._index: dict[str, int] = {}
        self._cnames: set[str] = set()
        # provenance for solvers (graph, formulation kind); not part of equality
        self.meta: dict = {}

    # builders

    def add_var(self, name: str, kind: str = CONTINUOUS, lower=0, upper=INF) -> str:
        if name in self._index:
            raise ModelError(f"duplicate variable name {name!r}")
        if kind == BINARY:
            lower, upper = 0, 1
        elif kind != CONTINUOUS:
            raise ModelError(f"unknown variable kind {kind!r}")
        lower, upper = _exact(lower), _exact(upper)
        if lower > upper:
            raise ModelError(f"{name}: lower bound {lower} exceeds upper bound {upper}")
        self._index[name] = len(self.vars)
        self.vars.append(VarDef(name, kind, lower, upper))
        return name

    def add_binary(self, name: str) -> str:
        return self.add_var(name, BINARY)

    def _terms(self, terms, where: str) -> tuple[tuple[str, object], ...]:
        out: dict[str, object] = {}
        for var, coef in terms:
            if var not in self._index:
                raise ModelError(f"{where}: unknown variable {var!r}")
            if var in out:
                raise ModelError(f"{where}: variable {var!r} repeated")
            coef = _exact(coef)
            if isinstance(coef, float):
                raise ModelError(f"{where}: infinite coefficient")
            if coef != 0:
                out[var] = coef
        return tuple(out.items())

    def add_constraint(self, name: str, terms, sense: str, rhs) -> LinConstraint:
        if name in self._cnames:
            raise ModelError(f"duplicate constraint name {name!r}")
        if sense not in SENSES:
            raise ModelError(f"{name}: unknown sense {sense!r}")
        rhs = _exact(rhs)
        if isinstance(rhs, float):
            raise ModelError(f"{name}: infinite right-hand side")
        con = LinConstraint(name, self._terms(terms, name), sense, rhs)
        self._cnames.add(name)
        self.constraints.append(con)
        return con

    def set_objective(self, terms) -> None:
        self.objective = list(self._terms(terms, "objective"))

    # queries

    def var(self, name: str) -> VarDef:
        return self.vars[self._index[name]]

    def index(self, name: str) -> int:
        return self._index[name]

    def __contains__(self, name: str) -> bool:
        return name in self._index

    @property
    def var_names(self) -> list[str]:
        return [v.name for v in self.vars]

    def binary_indices(self) -> list[int]:
        return [t for t, v in enumerate(self.vars) if v.kind == BINARY]

    def stats(self) -> ModelStats:
        nb = sum(1 for v in self.vars if v.kind == BINARY)
        return ModelStats(nb, len(self.vars) - nb, len(self.constraints))

    def canonical(self):
        """Order-independent structural key used for equality."""
        return (
            tuple(sorted(self.vars, key=lambda v: v.name)),
            tuple(sorted(
                (c.name, tuple(sorted(c.terms)), c.sense, c.rhs) for c in self.constraints
            )),
            tuple(sorted(self.objective)),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearModel):
            return NotImplemented
        return self.canonical() == other.canonical()

    __hash__ = None

    def __repr__(self) -> str:
        s = self.stats()
        return (f"LinearModel({self.name!r}, binary={s.n_binary}, "
                f"continuous={s.n_continuous}, constraints={s.n_constraints})")

    def to_arrays(self):
        """Float arrays ``(c, A, row_lo, row_hi, lb, ub)`` with ``A`` in CSR form.

        Each row reads ``row_lo <= A x <= row_hi``.
        """
        nv = len(self.vars)
        c = np.zeros(nv)
        for var, coef in self.objective:
            c[self._index[var]] = float(coef)
        rows, cols, vals = [], [], []
        lo = np.empty(len(self.constraints))
        hi = np.empty(len(self.constraints))
        for r, con in enumerate(self.constraints):
            for var, coef in con.terms:
                rows.append(r)
                cols.append(self._index[var])
                vals.append(float(coef))
            rhs = float(con.rhs)
            lo[r] = rhs if con.sense in (">=", "=") else -INF
            hi[r] = rhs if con.sense in ("<=", "=") else INF
        A = sparse.csr_matrix((vals, (rows, cols)), shape=(len(self.constraints), nv))
        lb = np.array([float(v.lower) for v in self.vars])
        ub = np.array([float(v.upper) for v in self.vars])
        return c, A, lo, hi, lb, ub


def stats(model: LinearModel) -> ModelStats:
    return model.stats()


# -- LP format --------------------------------------------------------------


def _lp_expr(terms) -> str:
    if not terms:
        return "0"
    parts = []
    for t, (var, coef) in enumerate(terms):
        sign = "-" if coef < 0 else "+"
        mag = -coef if coef < 0 else coef
        body = var if mag == 1 else f"{_fmt(mag)} {var}"
        if t == 0:
            parts.append(f"- {body}" if sign == "-" else body)
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


def emit_lp(model: LinearModel) -> str:
    """CPLEX-style LP text; one line per constraint."""
    out = [f"\\ {model.name}", "Minimize", f" obj: {_lp_expr(model.objective)}", "Subject To"]
    for con in model.constraints:
        out.append(f" {con.name}: {_lp_expr(con.terms)} {con.sense} {_fmt(con.rhs)}")
    out.append("Bounds")
    for v in model.vars:
        if v.kind == BINARY:
            continue
        if v.lower == -INF and v.upper == INF:
            out.append(f" {v.name} free")
        elif v.lower == v.upper:
            out.append(f" {v.name} = {_fmt(v.lower)}")
        elif v.upper == INF:
            out.append(f" {v.name} >= {_fmt(v.lower)}")
        else:
            out.append(f" {_fmt(v.lower)} <= {v.name} <= {_fmt(v.upper)}")
    binaries = [v.name for v in model.vars if v.kind == BINARY]
    if binaries:
        out.append("Binaries")
        for start in range(0, len(binaries), 10):
            out.append(" " + " ".join(binaries[start:start + 10]))
    out.append("End")
    return "\n".join(out) + "\n"


# -- MPS (free format) ------------------------------------------------------

_ROW_TYPE = {"<=": "L", ">=": "G", "=": "E"}
_SENSE_OF = {v: k for k, v in _ROW_TYPE.items()}
_OBJ_ROW = "obj"


def emit_mps(model: LinearModel) -> str:
    """Free-format MPS.  Binaries get ``BV`` bounds; every column is listed
    at least once (with a zero objective entry when it appears nowhere).

    Numbers are written as exact decimals, so :func:`parse_mps` recovers
    every coefficient with a terminating expansion; others (``1/3``) come
    back as the nearest double.
    """
    out = [f"NAME {model.name}", "ROWS", f" N {_OBJ_ROW}"]
    for con in model.constraints:
        out.append(f" {_ROW_TYPE[con.sense]} {con.name}")
    entries: dict[str, list[tuple[str, object]]] = {v.name: [] for v in model.vars}
    for var, coef in model.objective:
        entries[var].append((_OBJ_ROW, coef))
    for con in model.constraints:
        for var, coef in con.terms:
            entries[var].append((con.name, coef))
    out.append("COLUMNS")
    for v in model.vars:
        col = entries[v.name] or [(_OBJ_ROW, 0)]
        for row, coef in col:
            out.append(f" {v.name} {row} {_fmt(coef)}")
    out.append("RHS")
    for con in model.constraints:
        if con.rhs != 0:
            out.append(f" RHS {con.name} {_fmt(con.rhs)}")
    out.append("BOUNDS")
    for v in model.vars:
        if v.kind == BINARY:
            out.append(f" BV BND {v.name}")
            continue
        lo, up = v.lower, v.upper
        if lo == -INF and up == INF:
            out.append(f" FR BND {v.name}")
            continue
        if lo == up:
            out.append(f" FX BND {v.name} {_fmt(lo)}")
            continue
        if lo == -INF:
            out.append(f" MI BND {v.name}")
        elif lo != 0:
            out.append(f" LO BND {v.name} {_fmt(lo)}")
        if up != INF:
            out.append(f" UP BND {v.name} {_fmt(up)}")
    out.append("ENDATA")
    return "\n".join(out) + "\n"


_SECTIONS = ("NAME", "ROWS", "COLUMNS", "RHS", "RANGES", "BOUNDS", "ENDATA", "OBJSENSE")


def parse_mps(text: str) -> LinearModel:
    """Read free-format MPS as written by :func:`emit_mps`.

    Integer markers (``MARKER INTORG``) are accepted; those columns become
    binary when their bounds are ``[0, 1]`` or absent.  ``RANGES`` is
    rejected since range rows are unsupported.
    """
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("*")]
    if not lines:
        raise MpsFormatError("empty document")
    name = "model"
    section = None
    obj_row = None
    row_sense: dict[str, str] = {}
    row_order: list[str] = []
    col_order: list[str] = []
    col_entries: dict[str, list[tuple[str, object]]] = {}
    rhs: dict[str, object] = {}
    bounds: dict[str, list] = {}
    integer_cols: set[str] = set()
    in_marker = False
    ended = False

    for lineno, raw in enumerate(lines, 1):
        if not raw[0].isspace():
            head = raw.split()
            key = head[0].upper()
            if key not in _SECTIONS:
                raise MpsFormatError(f"line {lineno}: unknown section {head[0]!r}")
            if key == "RANGES":
                raise MpsFormatError(f"line {lineno}: RANGES section is not supported")
            if key == "NAME":
                name = head[1] if len(head) > 1 else name
            if key == "ENDATA":
                ended = True
                break
            section = key
            continue
        f = raw.split()
        if section == "ROWS":
            if len(f) != 2 or f[0].upper() not in ("N", "L", "G", "E"):
                raise MpsFormatError(f"line {lineno}: bad row line {raw.strip()!r}")
            kind, row = f[0].upper(), f[1]
            if row in row_sense or row == obj_row:
                raise MpsFormatError(f"line {lineno}: duplicate row {row!r}")
            if kind == "N":
                if obj_row is not None:
                    raise MpsFormatError(f"line {lineno}: second objective row {row!r}")
                obj_row = row
            else:
                row_sense[row] = _SENSE_OF[kind]
                row_order.append(row)
        elif section == "COLUMNS":
            if len(f) >= 3 and f[1].strip("'").upper() == "MARKER":
                marker = f[2].strip("'").upper()
                if marker == "INTORG":
                    in_marker = True
                elif marker == "INTEND":
                    in_marker = False
                else:
                    raise MpsFormatError(f"line {lineno}: unknown marker {f[2]!r}")
                continue
            if len(f) not in (3, 5):
                raise MpsFormatError(f"line {lineno}: bad column line {raw.strip()!r}")
            col = f[0]
            if col not in col_entries:
                col_order.append(col)
                col_entries[col] = []
            elif col_order[-1] != col:
                raise MpsFormatError(f"line {lineno}: column {col!r} is not contiguous")
            if in_marker:
                integer_cols.add(col)
            for row, val in zip(f[1::2], f[2::2]):
                if row != obj_row and row not in row_sense:
                    raise MpsFormatError(f"line {lineno}: unknown row {row!r}")
                col_entries[col].append((row, _num(val)))
        elif section == "RHS":
            if len(f) not in (3, 5):
                raise MpsFormatError(f"line {lineno}: bad RHS line {raw.strip()!r}")
            for row, val in zip(f[1::2], f[2::2]):
                if row == obj_row:
                    raise MpsFormatError(f"line {lineno}: objective constant not supported")
                if row not in row_sense:
                    raise MpsFormatError(f"line {lineno}: unknown row {row!r}")
                rhs[row] = _num(val)
        elif section == "BOUNDS":
            if len(f) < 3:
                raise MpsFormatError(f"line {lineno}: bad bound line {raw.strip()!r}")
            kind, col = f[0].upper(), f[2]
            if col not in col_entries:
                raise MpsFormatError(f"line {lineno}: unknown column {col!r}")
            value = _num(f[3]) if len(f) > 3 else None
            if kind in ("LO", "UP", "FX") and value is None:
                raise MpsFormatError(f"line {lineno}: bound {kind} needs a value")
            if kind not in ("LO", "UP", "FX", "FR", "MI", "PL", "BV"):
                raise MpsFormatError(f"line {lineno}: unknown bound type {kind!r}")
            bounds.setdefault(col, []).append((kind, value))
        else:
            raise MpsFormatError(f"line {lineno}: data outside a section")
    if not ended:
        raise MpsFormatError("missing ENDATA")
    if obj_row is None:
        raise MpsFormatError("no objective row")

    model = LinearModel(name)
    row_terms: dict[str, list] = {r: [] for r in row_order}
    objective = []
    for col in col_order:
        lo, up, kind = 0, INF, CONTINUOUS
        for bkind, value in bounds.get(col, []):
            if bkind == "BV":
                kind = BINARY
            elif bkind == "LO":
                lo = value
            elif bkind == "UP":
                up = value
            elif bkind == "FX":
                lo = up = value
            elif bkind == "FR":
                lo, up = -INF, INF
            elif bkind == "MI":
                lo = -INF
            elif bkind == "PL":
                up = INF
        if col in integer_cols and kind != BINARY:
            if (lo, up) in ((0, INF), (0, 1)):
                kind = BINARY
            else:
                raise MpsFormatError(f"general integer column {col!r} is not supported")
        model.add_var(col, kind, lo, up)
        for row, coef in col_entries[col]:
            if coef == 0:
                continue
            if row == obj_row:
                objective.append((col, coef))
            else:
                row_terms[row].append((col, coef))
    for row in row_order:
        model.add_constraint(row, row_terms[row], row_sense[row], rhs.get(row, 0))
    model.set_objective(objective)
    return model
