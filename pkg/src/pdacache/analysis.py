"""Closed-form scheme parameters, brute-force cross-checks, and sweeps.

Three schemes share the subset-intersection arrays of `constructions`:

  original  uncoded placement on the raw array; at each parameter point the
            cheaper of the two labeling rules is taken, so the rate is
            min(S_I, S_II) / F.

  new_I     rule-I array, useless stars deleted, coded placement. A rule-I
            star at (B, A) is useless iff |A & B| < lam, which yields the
            per-column count sum_{i<lam} C(r,i) C(H-r,b-i).

  new_II    rule-II array, same treatment; useless iff |A & B| > lam, count
            sum_{i>lam} C(r,i) C(H-r,b-i).

Each scheme gates its own parameter region: `original` needs r+b-lam < H,
`new_I` needs r+b <= H, `new_II` needs r+b <= H+lam. The sweep emits, on
top of those, records for points that the generator accepts but the
scheme's own gate rejects, marked with flag="gate-gap" and excluded from
envelopes, so the disputed boundary stays visible instead of vanishing.

All arithmetic is exact (`Fraction`); floats appear only in the SVG chart.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, replace
from fractions import Fraction
from io import StringIO
from typing import Iterable, TextIO

from .constructions import ConstructionParams, RULE_I, RULE_II, comb, construct, \
    predicted_params
from .pda import classify_stars, reduce, validate

ORIGINAL = "original"
NEW_I = "new_I"
NEW_II = "new_II"
NEW = "new"
GATE_GAP = "gate-gap"

CSV_COLUMNS = ["scheme", "H", "r", "b", "lambda", "K", "memory_ratio_num",
               "memory_ratio_den", "rate_num", "rate_den", "subpacketization",
               "flag"]


@dataclass(frozen=True)
class SchemeRecord:
    scheme: str
    H: int
    r: int
    b: int
    lam: int
    K: int
    memory_ratio: Fraction
    rate: Fraction
    subpacketization: int
    flag: str = ""


def _base_gates(h: int, r: int, b: int, lam: int) -> None:
    if not 0 < r < h:
        raise ValueError(f"need 0 < r < H, got r={r}, H={h}")
    if not 0 < b < h:
        raise ValueError(f"need 0 < b < H, got b={b}, H={h}")
    if lam < 1:
        raise ValueError(f"intersection size must be positive, got {lam}")
    if lam >= min(r, b):
        raise ValueError(f"need lam < min(r, b), got lam={lam}, r={r}, b={b}")


def useless_per_column(h: int, r: int, b: int, lam: int, rule: str) -> int:
    """Closed-form useless star count of every column of a constructed array."""
    if rule == RULE_I:
        return sum(comb(r, i) * comb(h - r, b - i) for i in range(lam))
    if rule == RULE_II:
        return sum(comb(r, i) * comb(h - r, b - i) for i in range(lam + 1, r + 1))
    raise ValueError(f"unknown rule {rule!r}")


def _original_record(h: int, r: int, b: int, lam: int, flag: str = "") -> SchemeRecord:
    f = comb(h, b)
    sym = r + b - 2 * lam
    s_min = comb(h, sym) * min(comb(h - sym, lam), comb(sym, r - lam))
    return SchemeRecord(
        scheme=ORIGINAL, H=h, r=r, b=b, lam=lam, K=comb(h, r),
        memory_ratio=1 - Fraction(comb(r, lam) * comb(h - r, b - lam), f),
        rate=Fraction(s_min, f), subpacketization=f, flag=flag)


def _new_record(h: int, r: int, b: int, lam: int, rule: str, flag: str = "") -> SchemeRecord:
    zp = useless_per_column(h, r, b, lam, rule)
    f_new = comb(h, b) - zp
    sym = r + b - 2 * lam
    if rule == RULE_I:
        s = comb(h, sym) * comb(h - sym, lam)
    else:
        s = comb(h, sym) * comb(sym, r - lam)
    return SchemeRecord(
        scheme=NEW_I if rule == RULE_I else NEW_II, H=h, r=r, b=b, lam=lam,
        K=comb(h, r),
        memory_ratio=1 - Fraction(comb(r, lam) * comb(h - r, b - lam), f_new),
        rate=Fraction(s, f_new), subpacketization=f_new, flag=flag)


def original_params(h: int, r: int, b: int, lam: int) -> SchemeRecord:
    """Uncoded-placement scheme on the raw array; needs r + b - lam < H."""
    _base_gates(h, r, b, lam)
    if r + b - lam >= h:
        raise ValueError(f"need r + b - lam < H, got {r + b - lam} >= {h}")
    return _original_record(h, r, b, lam)


def new_params_I(h: int, r: int, b: int, lam: int) -> SchemeRecord:
    """Reduced rule-I scheme with coded placement; needs r + b <= H."""
    _base_gates(h, r, b, lam)
    if r + b > h:
        raise ValueError(f"need r + b <= H, got {r + b} > {h}")
    return _new_record(h, r, b, lam, RULE_I)


def new_params_II(h: int, r: int, b: int, lam: int) -> SchemeRecord:
    """Reduced rule-II scheme with coded placement; needs r + b <= H + lam."""
    _base_gates(h, r, b, lam)
    if r + b > h + lam:
        raise ValueError(f"need r + b <= H + lam, got {r + b} > {h + lam}")
    return _new_record(h, r, b, lam, RULE_II)


@dataclass
class CrosscheckReport:
    params: ConstructionParams
    ok: bool
    issues: list[str]
    measured_zprime: int
    formula_zprime: int
    measured_ratio: Fraction
    measured_rate: Fraction
    measured_subpacketization: int


def crosscheck(params: ConstructionParams) -> CrosscheckReport:
    """Build the array and test every closed form against brute force.

    Checks, in order: validated parameters against `predicted_params`, the
    per-column useless star count of every column against the closed-form
    sum, and the reduced scheme triple (subpacketization, memory ratio,
    rate) against the formula record. Mismatches are reported, not raised.
    """
    issues: list[str] = []
    pda = construct(params)
    measured = validate(pda)
    predicted = predicted_params(params)
    if measured != predicted:
        issues.append(f"validated params {measured} != predicted {predicted}")

    zp_formula = useless_per_column(params.H, params.r, params.b, params.lam,
                                    params.rule)
    cls = classify_stars(pda)
    for k, count in enumerate(cls.per_column_useless):
        if count != zp_formula:
            issues.append(f"column {k} has {count} useless stars, formula says {zp_formula}")
            break

    reduced, zp = reduce(pda)
    if zp != zp_formula:
        issues.append(f"reduction removed {zp} stars per column, formula says {zp_formula}")

    f_new = measured.F - zp
    ratio = Fraction(measured.Z - zp, f_new)
    rate = Fraction(measured.S, f_new)
    formula = _new_record(params.H, params.r, params.b, params.lam, params.rule)
    if (f_new, ratio, rate) != (formula.subpacketization, formula.memory_ratio,
                                formula.rate):
        issues.append(
            f"reduced scheme ({f_new}, {ratio}, {rate}) != formula "
            f"({formula.subpacketization}, {formula.memory_ratio}, {formula.rate})")

    return CrosscheckReport(
        params=params, ok=not issues, issues=issues,
        measured_zprime=zp, formula_zprime=zp_formula,
        measured_ratio=ratio, measured_rate=rate,
        measured_subpacketization=f_new)


def lower_envelope(records: Iterable[SchemeRecord]) -> list[SchemeRecord]:
    """Pareto-minimal points of (memory_ratio, rate), ascending memory."""
    best: dict[Fraction, SchemeRecord] = {}
    for rec in records:
        cur = best.get(rec.memory_ratio)
        if cur is None or rec.rate < cur.rate:
            best[rec.memory_ratio] = rec
    out: list[SchemeRecord] = []
    bar: Fraction | None = None
    for ratio in sorted(best):
        rec = best[ratio]
        if bar is None or rec.rate < bar:
            out.append(rec)
            bar = rec.rate
    return out


def sweep(h: int, r: int) -> list[SchemeRecord]:
    """Every admissible (b, lam) for all schemes at fixed (H, r).

    Returns per-point records for original/new_I/new_II, a `new` record
    taking the smaller-rate branch of the two reduced schemes at each point,
    and the lower envelopes of the original and new curves (scheme names
    `original_envelope`, `new_envelope`). Sorted by memory ratio; gate-gap
    records carry flag="gate-gap".
    """
    if not 0 < r < h:
        raise ValueError(f"need 0 < r < H, got r={r}, H={h}")
    points: list[SchemeRecord] = []
    for b in range(1, h):
        for lam in range(1, min(r, b)):
            if r + b > h + lam:
                continue  # generator rejects the point outright
            orig_flag = "" if r + b - lam < h else GATE_GAP
            points.append(_original_record(h, r, b, lam, orig_flag))
            rec_i = _new_record(h, r, b, lam, RULE_I,
                                "" if r + b <= h else GATE_GAP)
            rec_ii = _new_record(h, r, b, lam, RULE_II)
            points.extend([rec_i, rec_ii])
            branches = [rec for rec in (rec_i, rec_ii) if not rec.flag]
            chosen = min(branches, key=lambda rec: rec.rate)
            points.append(replace(chosen, scheme=NEW))

    points.sort(key=lambda rec: (rec.memory_ratio, rec.rate, rec.scheme,
                                 rec.b, rec.lam))
    out = list(points)
    for name, curve in ((ORIGINAL, "original_envelope"), (NEW, "new_envelope")):
        source = [rec for rec in points if rec.scheme == name and not rec.flag]
        out += [replace(rec, scheme=curve) for rec in lower_envelope(source)]
    return out


def write_csv(records: Iterable[SchemeRecord], out: TextIO) -> None:
    writer = csv.writer(out)
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        writer.writerow([
            rec.scheme, rec.H, rec.r, rec.b, rec.lam, rec.K,
            rec.memory_ratio.numerator, rec.memory_ratio.denominator,
            rec.rate.numerator, rec.rate.denominator,
            rec.subpacketization, rec.flag])


def read_csv(src: TextIO) -> list[SchemeRecord]:
    reader = csv.DictReader(src)
    records = []
    for row in reader:
        records.append(SchemeRecord(
            scheme=row["scheme"], H=int(row["H"]), r=int(row["r"]),
            b=int(row["b"]), lam=int(row["lambda"]), K=int(row["K"]),
            memory_ratio=Fraction(int(row["memory_ratio_num"]),
                                  int(row["memory_ratio_den"])),
            rate=Fraction(int(row["rate_num"]), int(row["rate_den"])),
            subpacketization=int(row["subpacketization"]),
            flag=row["flag"]))
    return records


def records_to_csv(records: Iterable[SchemeRecord]) -> str:
    buf = StringIO()
    write_csv(records, buf)
    return buf.getvalue()


_PALETTE = {
    ORIGINAL: "#1f77b4",
    NEW: "#d62728",
    NEW_I: "#2ca02c",
    NEW_II: "#9467bd",
    "original_envelope": "#1f77b4",
    "new_envelope": "#d62728",
}


def render_svg(records: Iterable[SchemeRecord], width: int = 640,
               height: int = 440) -> str:
    """Rate versus memory ratio, one polyline per scheme. Floats only here."""
    series: dict[str, list[tuple[float, float]]] = {}
    for rec in records:
        if rec.flag:
            continue
        series.setdefault(rec.scheme, []).append(
            (float(rec.memory_ratio), float(rec.rate)))
    for pts in series.values():
        pts.sort()
    allpts = [p for pts in series.values() for p in pts]
    if not allpts:
        raise ValueError("nothing to plot")
    x0, x1 = min(p[0] for p in allpts), max(p[0] for p in allpts)
    y0, y1 = min(p[1] for p in allpts), max(p[1] for p in allpts)
    xspan = (x1 - x0) or 1.0
    yspan = (y1 - y0) or 1.0
    ml, mr, mt, mb = 60, 20, 20, 45
    pw, ph = width - ml - mr, height - mt - mb

    def sx(x: float) -> float:
        return ml + (x - x0) / xspan * pw

    def sy(y: float) -> float:
        return mt + (y1 - y) / yspan * ph

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{ml}" y1="{mt + ph}" x2="{ml + pw}" y2="{mt + ph}" stroke="black"/>',
        f'<line x1="{ml}" y1="{mt}" x2="{ml}" y2="{mt + ph}" stroke="black"/>',
        f'<text x="{ml + pw / 2:.1f}" y="{height - 8}" text-anchor="middle">memory ratio</text>',
        f'<text x="14" y="{mt + ph / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 14 {mt + ph / 2:.1f})">rate</text>',
    ]
    for val, horizontal in ((x0, True), (x1, True), (y0, False), (y1, False)):
        if horizontal:
            parts.append(f'<text x="{sx(val):.1f}" y="{mt + ph + 16}" '
                         f'text-anchor="middle">{val:.3g}</text>')
        else:
            parts.append(f'<text x="{ml - 6}" y="{sy(val) + 4:.1f}" '
                         f'text-anchor="end">{val:.3g}</text>')
    legend_y = mt + 4
    for name in sorted(series):
        pts = series[name]
        color = _PALETTE.get(name, "#555555")
        dash = ' stroke-dasharray="5 3"' if name.endswith("_envelope") else ""
        coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in pts)
        parts.append(f'<polyline points="{coords}" fill="none" '
                     f'stroke="{color}" stroke-width="1.5"{dash}/>')
        for x, y in pts:
            parts.append(f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="2.2" '
                         f'fill="{color}"/>')
        parts.append(f'<line x1="{ml + pw - 130}" y1="{legend_y}" '
                     f'x2="{ml + pw - 110}" y2="{legend_y}" stroke="{color}" '
                     f'stroke-width="1.5"{dash}/>')
        parts.append(f'<text x="{ml + pw - 104}" y="{legend_y + 4}">{name}</text>')
        legend_y += 16
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
