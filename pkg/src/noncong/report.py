"""Verification report: claim registry, delimited emitters, and figures.

Every check the package runs is tied to one claim identifier from a
fixed registry, so a verification run doubles as a reproduction log.
One data model feeds the CSV, JSON, and Markdown emitters; the report
path also renders two PNG figures next to the delimited output: the
degree-1 traces against their Weil band, and the congruence valuation
margins.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from pathlib import Path

TABLE_PRIMES = (5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59)
EXTENDED_PRIMES = (61, 67, 71, 73, 79, 83, 89, 97)
ASD_PRIMES = (5, 7, 11, 13, 17, 19, 23)
ISOGENY_PRIMES = (13, 17, 29)


def _asd_claim(p: int) -> str:
    if p % 3 == 1:
        return "Prop6.3/p=%d" % p
    if p % 12 == 5:
        return "Prop6.4/p=%d" % p
    return "Prop6.5/p=%d" % p


def _build_registry() -> dict:
    reg = {
        "Sec2.4/hauptmodul-t": "leading expansion of the Hauptmodul t",
        "Eq2.2/cuspforms": "h1^3 and h2^3 match their eta quotients to order 600",
        "Eq5.1/newform-display": "the twelve displayed newform coefficients",
        "Eq1.1/hecke": "Hecke recursion and multiplicativity below 500",
        "Prop3.2/operator-algebra": "squares and anticommutators of B(-1), B(-3), B(3)",
        "Prop4.2.1/unit-quaternions": "unit quaternion triple J(-1), J(-3), J(3)",
        "Sec3.3/slash-action": "numeric slash action matches the A-matrix",
    }
    for p in TABLE_PRIMES:
        reg["Table1/p=%d" % p] = "degree-2 row at p=%d, zeta column included" % p
        reg["Table2/p=%d" % p] = "degree-4 row at p=%d" % p
        reg["Thm4.4/p=%d" % p] = "cubic-twist relation between g_{p,2} and g_{p,4}"
        reg["Thm5.3/p=%d" % p] = "quartic-twist relation between g_{p,4} and c_p"
    for p in TABLE_PRIMES + EXTENDED_PRIMES:
        for a in (2, 4):
            reg["Weil/a=%d/p=%d" % (a, p)] = "structural Weil invariants"
    for p in ASD_PRIMES:
        reg[_asd_claim(p)] = "three-term congruences mod p^2r up to 600"
    for p in ISOGENY_PRIMES:
        reg["Prop3.1/isogeny/p=%d" % p] = "sampled degree-8 isogeny verification"
    return reg


CLAIM_REGISTRY = _build_registry()


@dataclass(frozen=True)
class ReportRow:
    claim: str
    verdict: bool
    witness: str
    runtime: float

    def __post_init__(self):
        if self.claim not in CLAIM_REGISTRY:
            raise ValueError("unregistered claim identifier: %s" % self.claim)


@dataclass
class Report:
    rows: list

    @property
    def ok(self) -> bool:
        return all(r.verdict for r in self.rows)

    def add(self, claim: str, verdict: bool, witness: str, runtime: float) -> None:
        self.rows.append(ReportRow(claim, bool(verdict), witness, runtime))

    def failed(self):
        return [r for r in self.rows if not r.verdict]

    # -- emitters ----------------------------------------------------------

    def to_csv(self) -> str:
        lines = ["claim,verdict,runtime_s,witness"]
        for r in self.rows:
            witness = r.witness.replace('"', "'")
            lines.append('%s,%s,%.3f,"%s"' % (r.claim, "pass" if r.verdict else "FAIL", r.runtime, witness))
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(
            {
                "ok": self.ok,
                "rows": [asdict(r) for r in self.rows],
            },
            indent=2,
        ) + "\n"

    def to_markdown(self) -> str:
        lines = [
            "| claim | verdict | runtime (s) | witness |",
            "| --- | --- | --- | --- |",
        ]
        for r in self.rows:
            lines.append(
                "| %s | %s | %.3f | %s |"
                % (r.claim, "pass" if r.verdict else "**FAIL**", r.runtime, r.witness.replace("|", "/"))
            )
        return "\n".join(lines) + "\n"

    def emit(self, fmt: str) -> str:
        try:
            return {"csv": self.to_csv, "json": self.to_json, "md": self.to_markdown}[fmt]()
        except KeyError:
            raise ValueError("format must be csv, json, or md") from None

    def write(self, out_dir, fmt: str, stem: str = "report") -> Path:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        path = out / ("%s.%s" % (stem, fmt))
        path.write_text(self.emit(fmt))
        return path


# -- figures ---------------------------------------------------------------


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def trace_weil_figure(records, path) -> Path:
    """Scatter of the degree-1 traces e1 against the Weil band |e1| <= 4p."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ps = sorted({rec.p for rec in records})
    ax.fill_between(ps, [-4 * p for p in ps], [4 * p for p in ps], alpha=0.15, label="|e1| <= 4p")
    for a, marker in ((2, "o"), (4, "s")):
        pts = [(rec.p, rec.e1) for rec in records if rec.a == a]
        if pts:
            ax.scatter([q[0] for q in pts], [q[1] for q in pts], marker=marker, label="a = %d" % a)
    ax.set_xlabel("p")
    ax.set_ylabel("e1")
    ax.set_title("Degree-1 Frobenius traces inside the Weil band")
    ax.legend()
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def asd_margin_figure(reports, path) -> Path:
    """Valuation margins (achieved minus required) of the matched pairings."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 4.5))
    merged = {}
    for rep in reports:
        matched = dict(rep.matching)
        for res in rep.results:
            if matched.get(res.basis_name) == res.pair_name:
                for r, floor in res.floors:
                    key = (rep.p, r)
                    margin = floor - 2 * r
                    merged[key] = min(merged.get(key, margin), margin)
    labels = ["p=%d r=%d" % key for key in sorted(merged)]
    margins = [merged[key] for key in sorted(merged)]
    xs = range(len(labels))
    ax.bar(xs, margins)
    ax.set_xticks(list(xs))
    ax.set_xticklabels(labels, rotation=75, fontsize=7)
    ax.axhline(0, color="black", linewidth=0.8)
    ax.set_ylabel("min valuation - required")
    ax.set_title("Congruence margins by prime and power (capped at precision)")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
