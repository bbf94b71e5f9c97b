"""Spectrum rows, golden-table comparison and the CSV/JSON/text encoders."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, fields
from importlib import resources

from ngas_sqwell import ipt2, reference
from ngas_sqwell.errors import NotConverged
from ngas_sqwell.model import LevelIndex, OscillatorSpec, SystemKind, validate
from ngas_sqwell.spectrum import dwo_ref_energy, lo_energy
from ngas_sqwell._parallel import parallel_map

# acceptance tolerances for the published tables
LO_ABS_TOL = 5e-4
E2_REL_TOL = 5e-3
EXACT_REL_TOL = 1e-3

CSV_COLUMNS = (
    "system",
    "g",
    "lambda",
    "n_s",
    "E_lo",
    "delta2",
    "E2",
    "E_exact",
    "err_lo_pct",
    "err2_pct",
    "converged",
)


@dataclass(frozen=True)
class SpectrumRow:
    """One level.  Double-well energies are measured from the well bottom."""

    system: str
    g: float
    lam: float
    n_s: int
    E_lo: float
    delta2: float | None = None
    E2: float | None = None
    E_exact: float | None = None
    err_lo_pct: float | None = None
    err2_pct: float | None = None
    converged: bool = True

    def as_record(self) -> dict:
        rec = asdict(self)
        rec["lambda"] = rec.pop("lam")
        return {k: rec[k] for k in CSV_COLUMNS}

    @classmethod
    def from_record(cls, rec: dict) -> SpectrumRow:
        rec = dict(rec)
        rec["lam"] = rec.pop("lambda")
        return cls(**{f.name: rec[f.name] for f in fields(cls)})


def percent_error(value, exact):
    if value is None or exact is None:
        return None
    return 100.0 * abs(value - exact) / abs(exact)


def compute_rows(
    spec: OscillatorSpec,
    levels_ns,
    order: str = "ipt2",
    with_reference: bool = False,
    trunc: ipt2.TruncationPolicy | None = None,
    intermediate: str = "own",
) -> list[SpectrumRow]:
    """Rows for one coupling set, in the order of ``levels_ns``."""
    validate(spec)
    if order not in ("lo", "ipt2"):
        raise ValueError(f"order must be 'lo' or 'ipt2', got {order!r}")
    levels = [LevelIndex.from_ns(ns) for ns in levels_ns]
    shift = dwo_ref_energy(0.0, spec.lam, spec.g) if spec.kind is SystemKind.DWO else 0.0

    exact = [None] * len(levels)
    ref_ok = True
    if with_reference:
        try:
            ref = reference.solve_exact(spec, levels)
        except NotConverged as exc:
            ref, ref_ok = exc.result, False
        exact = [float(v) for v in ref.table_values]

    def one(i):
        lv = levels[i]
        if order == "lo":
            E_lo = lo_energy(spec, lv).E_lo + shift
            d2 = E2 = None
            converged = True
        else:
            res = ipt2.delta2(spec, lv, trunc=trunc, intermediate=intermediate)
            E_lo = res.E_lo + shift
            d2 = res.delta2
            E2 = E_lo + d2
            converged = res.converged
        return SpectrumRow(
            system=spec.kind.value,
            g=spec.g,
            lam=spec.lam,
            n_s=lv.n_s,
            E_lo=E_lo,
            delta2=d2,
            E2=E2,
            E_exact=exact[i],
            err_lo_pct=percent_error(E_lo, exact[i]),
            err2_pct=percent_error(E2, exact[i]),
            converged=converged and ref_ok,
        )

    return parallel_map(one, range(len(levels)))


def compute_grid(kind, g, lambdas, levels_ns, **kwargs) -> list[SpectrumRow]:
    """Rows for every ``(lambda, n_s)`` pair, lambda-major like the tables."""
    out = []
    for lam in lambdas:
        out.extend(compute_rows(OscillatorSpec(kind, g, lam), levels_ns, **kwargs))
    return out


# -- golden data ------------------------------------------------------------------


@dataclass(frozen=True)
class GoldenRow:
    table: str
    system: str
    g: float
    lam: float
    n_s: int
    E_lo: float
    err_lo_pct: float
    E2: float
    E_exact: float
    err2_pct: float
    note: str


def load_golden(which: str | None = None) -> list[GoldenRow]:
    """Published table rows, optionally filtered to one table (I, II or III)."""
    text = resources.files("ngas_sqwell").joinpath("data/paper_tables.csv").read_text("utf-8")
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    rows = []
    for rec in csv.DictReader(lines):
        rows.append(
            GoldenRow(
                table=rec["table"],
                system=rec["system"],
                g=float(rec["g"]),
                lam=float(rec["lambda"]),
                n_s=int(rec["n_s"]),
                E_lo=float(rec["E_lo"]),
                err_lo_pct=float(rec["err_lo_pct"]),
                E2=float(rec["E2"]),
                E_exact=float(rec["E_exact"]),
                err2_pct=float(rec["err2_pct"]),
                note=rec["note"],
            )
        )
    if which is not None:
        which = which.upper()
        if which not in ("I", "II", "III"):
            raise ValueError(f"unknown table {which!r}; expected I, II or III")
        rows = [r for r in rows if r.table == which]
    return rows


@dataclass(frozen=True)
class CellCheck:
    golden: GoldenRow
    row: SpectrumRow

    @property
    def lo_ok(self) -> bool:
        return abs(self.row.E_lo - self.golden.E_lo) <= LO_ABS_TOL

    @property
    def e2_ok(self) -> bool:
        return self.row.E2 is not None and abs(self.row.E2 - self.golden.E2) <= E2_REL_TOL * abs(self.golden.E2)

    @property
    def exact_ok(self) -> bool | None:
        if self.row.E_exact is None:
            return None
        return abs(self.row.E_exact - self.golden.E_exact) <= EXACT_REL_TOL * abs(self.golden.E_exact)


def reproduce_table(which: str, with_reference: bool = True, trunc=None) -> list[CellCheck]:
    """Recompute every row of a published table next to its printed values."""
    golden = load_golden(which)
    by_lambda: dict[float, list[GoldenRow]] = {}
    for g in golden:
        by_lambda.setdefault(g.lam, []).append(g)
    checks = {}
    for lam, group in by_lambda.items():
        spec = OscillatorSpec(SystemKind(group[0].system), group[0].g, lam)
        rows = compute_rows(spec, [g.n_s for g in group], with_reference=with_reference, trunc=trunc)
        for g, row in zip(group, rows):
            checks[(g.lam, g.n_s)] = CellCheck(g, row)
    return [checks[(g.lam, g.n_s)] for g in golden]


# -- encoders -----------------------------------------------------------------------


def _csv_value(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.6f}" if math.isfinite(v) else repr(v)
    return str(v)


def to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        rec = row.as_record()
        writer.writerow([_csv_value(rec[c]) for c in CSV_COLUMNS])
    return buf.getvalue()


def to_json(rows) -> str:
    return json.dumps([row.as_record() for row in rows], indent=2) + "\n"


def from_json(text: str) -> list[SpectrumRow]:
    return [SpectrumRow.from_record(rec) for rec in json.loads(text)]


def _fmt(v, digits):
    return "-" if v is None else f"{v:.{digits}f}"


def to_text(rows) -> str:
    head = f"{'system':<6} {'lambda':>8} {'n_s':>4} {'E_lo':>10} {'delta2':>10} {'E2':>10} {'Exact':>10} {'errLO%':>8} {'err2%':>8}  conv"
    lines = [head, "-" * len(head)]
    for r in rows:
        lines.append(
            f"{r.system:<6} {r.lam:>8g} {r.n_s:>4d} {_fmt(r.E_lo, 4):>10} {_fmt(r.delta2, 4):>10} "
            f"{_fmt(r.E2, 4):>10} {_fmt(r.E_exact, 4):>10} {_fmt(r.err_lo_pct, 3):>8} "
            f"{_fmt(r.err2_pct, 3):>8}  {'yes' if r.converged else 'NO'}"
        )
    return "\n".join(lines) + "\n"


def _mark(ok):
    return "" if ok is None else ("ok" if ok else "FAIL")


def report_text(which: str, checks: list[CellCheck]) -> str:
    head = (
        f"{'n_s':>4} {'lambda':>7} | {'LO paper':>10} {'LO':>10} {'':4} | {'E2 paper':>10} {'E2':>10} {'':4} "
        f"| {'Ex paper':>10} {'Exact':>10} {'':4} | {'errLO%':>7} {'err2%':>7}"
    )
    lines = [f"Table {which}", head, "-" * len(head)]
    notes = []
    for c in checks:
        g, r = c.golden, c.row
        lines.append(
            f"{g.n_s:>4d} {g.lam:>7g} | {g.E_lo:>10.4f} {r.E_lo:>10.4f} {_mark(c.lo_ok):4} | "
            f"{g.E2:>10.4f} {_fmt(r.E2, 4):>10} {_mark(c.e2_ok):4} | {g.E_exact:>10.4f} "
            f"{_fmt(r.E_exact, 4):>10} {_mark(c.exact_ok):4} | {_fmt(r.err_lo_pct, 3):>7} {_fmt(r.err2_pct, 3):>7}"
        )
        if g.note:
            notes.append(f"  n_s={g.n_s}, lambda={g.lam:g}: {g.note}")
    n = len(checks)
    lines.append("")
    lines.append(f"LO    cells within {LO_ABS_TOL:g} absolute: {sum(c.lo_ok for c in checks)}/{n}")
    lines.append(f"E2    cells within {100 * E2_REL_TOL:g}% relative: {sum(c.e2_ok for c in checks)}/{n}")
    if all(c.exact_ok is not None for c in checks):
        lines.append(f"Exact cells within {100 * EXACT_REL_TOL:g}% relative: {sum(c.exact_ok for c in checks)}/{n}")
    if notes:
        lines.append("notes on printed values:")
        lines.extend(notes)
    return "\n".join(lines) + "\n"
