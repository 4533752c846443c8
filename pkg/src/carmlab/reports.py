"""Table emission: bundled rows, freshly computed rows, and joined deltas.

emit_table(k, mode) reproduces the layout of bundled table k. Computed mode
recomputes every row at desk scale (exponents 3 up to log10(bound)); paper
mode returns the bundled rows for all exponents; both mode joins the two and
appends per-column deltas for the overlapping rows.
"""
from __future__ import annotations

import math
from typing import Dict, List, Optional

from .asymptotics import a_of, beta_of, bound_formulas, corollary_values, h_of, observed_psi
from .carmichael import enumerate_carmichael_sieve, format_ratio
from .core_arith import factorize
from .dataset import PaperDataset, TABLE_FILES
from .pseudoprime import PspCounts, fermat_survivors, galway_fit
from .tables import CountTable

MODES = ("computed", "paper", "both")


def _exponents(bound: int) -> List[int]:
    top = int(math.log10(bound))
    if 10**top > bound:
        top -= 1
    if top < 3:
        raise ValueError("computed tables need bound >= 10^3")
    return list(range(3, top + 1))


def _carmichael_prefix_counts(bound: int, **kwargs) -> Dict[int, Dict[int, int]]:
    """exponent -> {k: count} from a single sieve pass at the largest bound."""
    records = enumerate_carmichael_sieve(bound, **kwargs)
    out: Dict[int, Dict[int, int]] = {}
    for exp in _exponents(bound):
        by_k: Dict[int, int] = {}
        for rec in records:
            if rec.n <= 10**exp:
                by_k[rec.k] = by_k.get(rec.k, 0) + 1
        out[exp] = by_k
    return out


def _psp_prefix_counts(bound: int, base: int = 2, spf=None, **kwargs) -> Dict[int, PspCounts]:
    """exponent -> PspCounts from a single survivor pass at the largest bound."""
    survivors = fermat_survivors(bound, base, **kwargs)
    omegas = [(int(n), factorize(int(n), spf).omega) for n in survivors]
    out: Dict[int, PspCounts] = {}
    for exp in _exponents(bound):
        by_omega: Dict[int, int] = {}
        for n, w in omegas:
            if n <= 10**exp:
                by_omega[w] = by_omega.get(w, 0) + 1
        out[exp] = PspCounts(
            bound=10**exp, base=base, total=sum(by_omega.values()), by_omega=by_omega
        )
    return out


def _computed_table(k: int, bound: int, columns: List[str], **kwargs) -> CountTable:
    table = CountTable(name=f"table{k}", columns=list(columns))
    exps = _exponents(bound)
    if k in (1, 2, 3, 5, 7, 8):
        carm = _carmichael_prefix_counts(10 ** exps[-1], **kwargs)
        totals = {e: sum(carm[e].values()) for e in exps}
    if k in (4, 6):
        psp = _psp_prefix_counts(10 ** exps[-1], **kwargs)
    for e in exps:
        x = 10.0**e
        if k == 1:
            by_k = carm[e]
            row = [e] + [by_k.get(j, 0) for j in range(3, 13)] + [totals[e]]
        elif k == 2:
            row = [e, f"{h_of(x, totals[e]):.5f}"]
        elif k == 3:
            p1, p2 = corollary_values(x)
            pom = bound_formulas(x)[0]["pomerance"].value
            row = [e, totals[e], f"{p1:.2f}", f"{p2:.2f}", f"{a_of(x):.2f}", f"{pom:.2f}"]
        elif k == 4:
            two = psp[e].by_omega.get(2, 0)
            row = [e, two, f"{galway_fit(10**e, two):.3f}"]
        elif k == 5:
            row = [e, totals[e], f"{beta_of(x, totals[e]):.5f}"]
        elif k == 6:
            two, tot = psp[e].by_omega.get(2, 0), psp[e].total
            ratio = 0.0 if tot == 0 else two / tot
            row = [e, two, tot, f"{ratio:.2f}"]
        elif k == 7:
            three = carm[e].get(3, 0)
            row = [e, three, totals[e], format_ratio(three / totals[e])]
        elif k == 8:
            p1, p2 = corollary_values(x)
            o1, o2 = observed_psi(x, totals[e])
            row = [e, totals[e], f"{p1:.2f}", f"{p2:.2f}", f"{o1:.4f}", f"{o2:.4f}"]
        else:
            raise KeyError(f"no table {k}")
        table.add_row(row)
    return table


def emit_table(
    k: int,
    mode: str = "paper",
    bound: int = 10**6,
    dataset: Optional[PaperDataset] = None,
    **kwargs,
) -> CountTable:
    """Bundled table k in the requested mode, with a source column appended."""
    if k not in TABLE_FILES:
        raise KeyError(f"no table {k}; choose from {sorted(TABLE_FILES)}")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    ds = dataset if dataset is not None else PaperDataset.load()
    paper = ds.table(k)
    if mode == "paper":
        out = CountTable(name=paper.name, columns=paper.columns + ["source"])
        for row in paper.rows:
            out.add_row(row + ["paper"])
        return out
    computed = _computed_table(k, bound, paper.columns, **kwargs)
    if mode == "computed":
        out = CountTable(name=computed.name, columns=computed.columns + ["source"])
        for row in computed.rows:
            out.add_row(row + ["computed"])
        return out
    return join_deltas(paper, computed)


def join_deltas(paper: CountTable, computed: CountTable) -> CountTable:
    """Join on the exponent column; numeric columns gain paper/computed/delta."""
    cols = [paper.columns[0]]
    for c in paper.columns[1:]:
        cols += [f"{c}_paper", f"{c}_computed", f"{c}_delta"]
    out = CountTable(name=f"{paper.name}_delta", columns=cols)
    comp = {row[0]: row for row in computed.rows}
    for prow in paper.rows:
        key = prow[0]
        if key not in comp:
            continue
        crow = comp[key]
        cells: List[str] = [key]
        for pv, cv in zip(prow[1:], crow[1:]):
            delta = float(cv) - float(pv)
            cells += [pv, cv, f"{delta:.6g}"]
        out.add_row(cells)
    return out


def max_abs_delta(delta_table: CountTable, column: str) -> float:
    """Largest |delta| for a named source column of a joined table."""
    vals = delta_table.column(f"{column}_delta")
    return max(abs(float(v)) for v in vals) if vals else 0.0
