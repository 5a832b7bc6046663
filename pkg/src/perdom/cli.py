"""Command surface: ingest a group spec, run the engine and the verifiers.

Exit codes: 0 success, 2 malformed spec, 3 verification mismatch, 4 budget
exhausted.  Reports are deterministic JSON (fixed key order, canonical
rational formatting) unless the table format is requested.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .cohom import (
    CohomologyTable,
    GroupData,
    all_dim_polys,
    assemble_cohomology,
    build_group_data,
    euler_characteristic,
    lefschetz_series,
)
from .complex import acyclicity_sweep
from .finflag import BudgetError, flag_count, mu_flag_type
from .rootdata import UnsupportedTypeError
from .semistable import (
    brute_force_ss_count,
    bruhat_cells_check,
    build_verifier,
    parabolic_invariance_sample,
    verifier_mode,
)

EXIT_OK = 0
EXIT_SPEC = 2
EXIT_MISMATCH = 3
EXIT_BUDGET = 4


class SpecError(ValueError):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


@dataclass
class GroupSpec:
    cartan_type: tuple[tuple[str, int], ...]
    twist: tuple[tuple[int, ...], int] | None
    mu: tuple[int, ...]
    q: int
    budget: int

    def echo(self) -> dict:
        out = {
            "type": [[f, r] for f, r in self.cartan_type],
            "mu": list(self.mu),
            "q": self.q,
        }
        if self.twist is not None:
            out["twist"] = {"perm": list(self.twist[0]), "order": self.twist[1]}
        return out


def _is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    for p in range(2, q + 1):
        if q % p == 0:
            while q % p == 0:
                q //= p
            return q == 1
    return False


def parse_group_spec(raw: dict, budget: int = 10**7) -> GroupSpec:
    if not isinstance(raw, dict):
        raise SpecError("$", "spec must be a JSON object")
    if "type" not in raw:
        raise SpecError("type", "missing")
    ctype = raw["type"]
    if not isinstance(ctype, list) or not ctype:
        raise SpecError("type", "expected a non-empty list of [family, rank] pairs")
    parsed_type = []
    for i, item in enumerate(ctype):
        if not isinstance(item, (list, tuple)) or len(item) != 2:
            raise SpecError(f"type[{i}]", "expected a [family, rank] pair")
        fam, rank = item
        if not isinstance(fam, str) or not isinstance(rank, int):
            raise SpecError(f"type[{i}]", "family must be a string and rank an integer")
        parsed_type.append((fam.upper(), rank))

    twist = None
    if raw.get("twist") is not None:
        t = raw["twist"]
        if not isinstance(t, dict) or "perm" not in t or "order" not in t:
            raise SpecError("twist", "expected {perm: [...], order: n}")
        perm = t["perm"]
        order = t["order"]
        if not isinstance(perm, list) or not all(isinstance(p, int) for p in perm):
            raise SpecError("twist.perm", "expected a list of 1-indexed images")
        if not isinstance(order, int) or order < 1:
            raise SpecError("twist.order", "expected a positive integer")
        twist = (tuple(perm), order)

    if "mu" not in raw:
        raise SpecError("mu", "missing")
    mu = raw["mu"]
    if not isinstance(mu, list) or not all(isinstance(c, int) for c in mu):
        raise SpecError("mu", "expected a list of integers")

    if "q" not in raw:
        raise SpecError("q", "missing")
    q = raw["q"]
    if not isinstance(q, int) or not _is_prime_power(q):
        raise SpecError("q", "expected a prime power >= 2")

    budget = raw.get("budget", budget)
    if not isinstance(budget, int) or budget < 1:
        raise SpecError("budget", "expected a positive integer")
    return GroupSpec(
        cartan_type=tuple(parsed_type), twist=twist, mu=tuple(mu), q=q, budget=budget
    )


def load_spec(path: str, budget: int = 10**7) -> GroupSpec:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise SpecError("$", f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SpecError("$", f"invalid JSON: {exc}") from exc
    return parse_group_spec(raw, budget)


def instantiate(spec: GroupSpec) -> GroupData:
    try:
        return build_group_data(spec.cartan_type, spec.mu, spec.q, twist=spec.twist)
    except UnsupportedTypeError as exc:
        raise SpecError("type", str(exc)) from exc
    except ValueError as exc:
        raise SpecError("spec", str(exc)) from exc


# ---------------------------------------------------------------------------
# rendering

def _frac_str(x: Fraction) -> str | int:
    x = Fraction(x)
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _labels(gd: GroupData, I: frozenset[int]) -> list[str]:
    return [gd.orbits_delta.labels[k] for k in sorted(I)]


def cohomology_block(gd: GroupData, table: CohomologyTable) -> dict:
    from .cohom import dim_v

    summands = []
    for s in table.summands:
        summands.append(
            {
                "degree": s.degree,
                "twist": s.twist,
                "orbit_size": s.galois_dim,
                "I": _labels(gd, s.I),
                "dim_v": list(dim_v(gd, s.I).coeffs),
            }
        )
    return {"d_prime": table.d_prime, "summands": summands}


def euler_block(gd: GroupData, table: CohomologyTable) -> list[dict]:
    return [
        {
            "sign": t.sign,
            "I": _labels(gd, t.I),
            "twist": t.twist,
            "orbit_size": t.galois_dim,
        }
        for t in euler_characteristic(table)
    ]


def dims_block(gd: GroupData) -> list[dict]:
    out = []
    for I, (ipoly, vpoly) in sorted(
        all_dim_polys(gd).items(), key=lambda kv: (len(kv[0]), sorted(kv[0]))
    ):
        out.append(
            {
                "I": _labels(gd, I),
                "dim_induced": list(ipoly.coeffs),
                "dim_v": list(vpoly.coeffs),
                "value_induced_at_q": ipoly(gd.q),
                "value_v_at_q": vpoly(gd.q),
            }
        )
    return out


def base_report(spec: GroupSpec, gd: GroupData) -> dict:
    return {
        "spec": spec.echo(),
        "mu_dominant": [int(c) for c in gd.mu.coords],
        "dominance_normalized": gd.dominance_normalized,
        "d_prime": gd.d_prime,
        "reflex_degree": gd.muclass.e_degree,
    }


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2, separators=(",", ": "))
    lines = []
    spec = report.get("spec", {})
    lines.append(f"type {spec.get('type')} twist {spec.get('twist', None)} mu {spec.get('mu')} q {spec.get('q')}")
    if report.get("dominance_normalized"):
        lines.append(f"mu normalized to dominant representative {report['mu_dominant']}")
    if "cohomology" in report:
        lines.append(f"d' = {report['d_prime']}")
        for s in report["cohomology"]["summands"]:
            i_txt = "{" + ",".join(s["I"]) + "}"
            lines.append(
                f"H^{s['degree']}: I={i_txt} twist={s['twist']} orbit_size={s['orbit_size']} dim_v={s['dim_v']}"
            )
    if "dims" in report:
        for row in report["dims"]:
            i_txt = "{" + ",".join(row["I"]) + "}"
            lines.append(
                f"P_{i_txt}: dim_induced={row['dim_induced']} (={row['value_induced_at_q']} at q) "
                f"dim_v={row['dim_v']} (={row['value_v_at_q']} at q)"
            )
    if "verification" in report:
        v = report["verification"]
        for row in v.get("counts", []):
            lines.append(
                f"m={row['m']}: series={row['series']} brute={row['brute_force']} "
                f"{'ok' if row['match'] else 'MISMATCH'}"
            )
        if "cells" in v:
            lines.append(f"cell checks: {'ok' if v['cells']['all_match'] else 'MISMATCH'}")
        if "induced_dim_guard" in v:
            lines.append(
                f"induced dimension guard: {'ok' if v['induced_dim_guard']['match'] else 'MISMATCH'}"
            )
        if "sweep" in v:
            for row in v["sweep"]:
                lines.append(
                    f"sweep m={row['m']}: {row['non_semistable']} non-semistable points, "
                    f"{'all acyclic' if row['all_acyclic'] else 'VIOLATIONS'}"
                )
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands

def cmd_cohomology(spec: GroupSpec, fmt: str) -> tuple[int, str]:
    gd = instantiate(spec)
    table = assemble_cohomology(gd)
    report = base_report(spec, gd)
    report["cohomology"] = cohomology_block(gd, table)
    report["euler"] = euler_block(gd, table)
    report["dims"] = dims_block(gd)
    return EXIT_OK, render(report, fmt)


def _induced_dim_guard(gd: GroupData, budget: int) -> dict:
    """Mandatory equality of the counting formula with actual point counts."""
    from .cohom import dim_induced
    from .finflag import make_tower

    mode = verifier_mode(gd)
    checks = []
    if mode == "split":
        n = gd.datum.ambient_dim
        tower = make_tower(gd.q, 1)
        from .finflag import enumerate_flag_points

        for k in range(gd.d_prime + 1):
            import itertools as _it

            for I in _it.combinations(range(gd.d_prime), k):
                I = frozenset(I)
                roots = set()
                for orb in I:
                    roots.update(gd.orbits_delta.orbits[orb])
                dims = tuple(d for d in range(1, n) if (d - 1) not in roots)
                weights = tuple(range(len(dims), -1, -1))
                count = len(enumerate_flag_points(tower, n, weights, dims, budget=budget))
                checks.append(
                    {"I": sorted(gd.orbits_delta.labels[i] for i in I),
                     "formula": dim_induced(gd, I)(gd.q), "points": count}
                )
    elif mode == "u3":
        ctx = build_verifier_for_guard(gd, budget)
        checks.append(
            {"I": [], "formula": dim_induced(gd, frozenset())(gd.q), "points": len(ctx)}
        )
        checks.append({"I": list(gd.orbits_delta.labels), "formula": 1, "points": 1})
    match = all(c["formula"] == c["points"] for c in checks)
    return {"match": match, "checks": checks}


def build_verifier_for_guard(gd: GroupData, budget: int):
    """Rational chambers of the unitary instance, counted independently."""
    from .finflag import HermitianData, make_tower
    from .semistable import _rational_unitary_flags

    tower = make_tower(gd.q, 2)
    herm = HermitianData(tower=tower, n=3)
    return _rational_unitary_flags(herm, budget)


def cmd_dims(spec: GroupSpec, fmt: str, budget: int) -> tuple[int, str]:
    gd = instantiate(spec)
    report = base_report(spec, gd)
    report["dims"] = dims_block(gd)
    if verifier_mode(gd) is not None:
        guard = _induced_dim_guard(gd, budget)
        report["verification"] = {"induced_dim_guard": guard}
        if not guard["match"]:
            return EXIT_MISMATCH, render(report, fmt)
    return EXIT_OK, render(report, fmt)


def _feasible_m(gd: GroupData, budget: int) -> int | None:
    n = gd.datum.ambient_dim
    _, dims = mu_flag_type(gd.mu.coords)
    for m in range(1, 4):
        if flag_count(n, dims, gd.q_e**m) <= budget:
            return m
    return None


def cmd_verify(spec: GroupSpec, fmt: str, m_list: list[int], budget: int, seed: int,
               points_csv_path: str | None = None) -> tuple[int, str]:
    gd = instantiate(spec)
    if verifier_mode(gd) is None:
        raise SpecError("type", "verify supports split type-A instances and twisted A_2")
    table = assemble_cohomology(gd)
    report = base_report(spec, gd)
    report["cohomology"] = cohomology_block(gd, table)
    verification: dict = {}
    report["verification"] = verification

    guard = _induced_dim_guard(gd, budget)
    verification["induced_dim_guard"] = guard

    counts = []
    cell_rows = []
    cells_ok = True
    spot_ok = True
    all_match = guard["match"]
    try:
        import itertools as _it

        from .semistable import semistable_indices

        for pos, m in enumerate(m_list):
            ctx = build_verifier(gd, m, budget=budget)
            series = lefschetz_series(gd, table, m)
            brute = brute_force_ss_count(ctx)
            row = {"m": m, "series": series, "brute_force": brute, "match": series == brute}
            if not row["match"]:
                ss = semistable_indices(ctx)
                probe = ctx.points[ss[0]] if ss else ctx.points[0]
                row["counterexample"] = {
                    "semistable_count": len(ss),
                    "probe_point": [[list(r) for r in s.rows] for s in probe.chain],
                }
            counts.append(row)
            all_match = all_match and row["match"]

            if ctx.mode == "split":
                for k in range(gd.d_prime + 1):
                    for I in _it.combinations(range(gd.d_prime), k):
                        ok, detail = bruhat_cells_check(ctx, frozenset(I))
                        cells_ok = cells_ok and ok
                        cell_rows.append(
                            {"m": m, "I": sorted(gd.orbits_delta.labels[i] for i in I),
                             "match": ok, **detail}
                        )
            if pos == 0:
                spot_ok = parabolic_invariance_sample(ctx, seed=seed)
                if points_csv_path:
                    from .semistable import points_csv

                    with open(points_csv_path, "w", encoding="utf-8") as fh:
                        fh.write(points_csv(ctx))
                    verification["points_csv"] = points_csv_path

        verification["counts"] = counts
        if cell_rows:
            verification["cells"] = {"all_match": cells_ok, "checks": cell_rows}
            all_match = all_match and cells_ok
        verification["invariant_spot_checks"] = {"seed": seed, "parabolic_invariance": spot_ok}
        all_match = all_match and spot_ok
    except BudgetError as exc:
        suggestion = _feasible_m(gd, budget)
        verification["budget_error"] = str(exc)
        if suggestion is not None:
            verification["smallest_feasible_m"] = suggestion
        return EXIT_BUDGET, render(report, fmt)

    return (EXIT_OK if all_match else EXIT_MISMATCH), render(report, fmt)


def cmd_sweep(spec: GroupSpec, fmt: str, m_list: list[int], budget: int, fail_fast: bool) -> tuple[int, str]:
    gd = instantiate(spec)
    if verifier_mode(gd) is None:
        raise SpecError("type", "sweep supports split type-A instances and twisted A_2")
    report = base_report(spec, gd)
    rows = []
    ok = True
    try:
        for m in m_list:
            ctx = build_verifier(gd, m, budget=budget)
            sweep = acyclicity_sweep(ctx, fail_fast=fail_fast, keep_details=True)
            rows.append(
                {
                    "m": m,
                    "total_points": sweep.total_points,
                    "non_semistable": sweep.non_semistable,
                    "all_acyclic": sweep.all_acyclic,
                    "violations": list(sweep.violations),
                    "per_point": [
                        {"point": d["point"], "simplices": list(d["simplices"]),
                         "betti": list(d["betti"])}
                        for d in sweep.per_point
                    ],
                }
            )
            ok = ok and sweep.all_acyclic
    except BudgetError as exc:
        report["verification"] = {"sweep": rows, "budget_error": str(exc)}
        return EXIT_BUDGET, render(report, fmt)
    report["verification"] = {"sweep": rows}
    return (EXIT_OK if ok else EXIT_MISMATCH), render(report, fmt)


# ---------------------------------------------------------------------------
# entry point

def _parse_m_list(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise SpecError("--m", f"bad extension list {text!r}") from exc
    if not values or any(v < 1 for v in values):
        raise SpecError("--m", "extension degrees must be positive")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="perdom",
        description="Cohomology tables of period domains over finite fields, with brute-force verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("cohomology", "dims", "verify", "sweep"):
        p = sub.add_parser(name)
        p.add_argument("--spec", required=True, help="path to a JSON group spec")
        p.add_argument("--format", choices=("json", "table"), default="json")
        p.add_argument("--budget", type=int, default=10**7)
        if name in ("verify", "sweep"):
            p.add_argument("--m", default="1,2", help="comma-separated extension degrees")
        if name == "verify":
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--points-csv", default=None, help="write per-point slope reports here")
        if name == "sweep":
            p.add_argument("--fail-fast", action="store_true")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = load_spec(args.spec, budget=args.budget)
        if args.command == "cohomology":
            code, out = cmd_cohomology(spec, args.format)
        elif args.command == "dims":
            code, out = cmd_dims(spec, args.format, args.budget)
        elif args.command == "verify":
            code, out = cmd_verify(spec, args.format, _parse_m_list(args.m), args.budget, args.seed,
                                   points_csv_path=args.points_csv)
        else:
            code, out = cmd_sweep(spec, args.format, _parse_m_list(args.m), args.budget, args.fail_fast)
    except SpecError as exc:
        print(f"spec error: {exc}", file=sys.stderr)
        return EXIT_SPEC
    except BudgetError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
