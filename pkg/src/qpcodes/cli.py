"""Command line surface: one-shot computations and table reproduction.

Manifests are TSV files with a header row ``ring f gens n k dlee comment``;
``gens`` is a comma-separated list of generator components in digit notation
and ``k`` the size exponent base q (the row's code has q^k codewords).  The
bundled ``table1.tsv`` and ``table2.tsv`` transcribe the reference search
tables for index two and three.

Exit codes: 0 success, 1 manifest mismatch, 2 notation/parse error,
3 precondition violation, 4 budget exceeded, 5 internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from importlib import resources

from .chain_ring import RingSpec
from .duality import (
    LinearCode,
    annihilator_dual,
    euclidean_dual,
    is_quasi_polycyclic,
    is_quasi_sequential,
)
from .errors import BudgetExceededError, NotationError, QPCodesError
from .poly_ring import (
    Poly,
    QuotientRing,
    factor_basic_irreducibles,
    format_terms,
    parse_poly,
    render_poly,
)
from .polycyclic import annihilator, cardinality_exponent, standard_form_from_generators
from .qp_code import (
    DEFAULT_BUDGET,
    CodeParams,
    QPGenerator,
    code_params,
    is_free,
    minimal_generating_set,
)

_MANIFEST_COLUMNS = ["ring", "f", "gens", "n", "k", "dlee"]


@dataclass(frozen=True)
class ManifestRow:
    ring: RingSpec
    f: Poly
    gens: tuple[Poly, ...]
    expected_n: int
    expected_size_exponent: int
    expected_lee: int
    comment: str = ""


@dataclass
class RowResult:
    row: ManifestRow
    params: CodeParams | None
    skipped: str | None
    wall_time: float

    @property
    def n_match(self) -> bool:
        return self.params is not None and self.params.n == self.row.expected_n

    @property
    def size_match(self) -> bool:
        return (
            self.params is not None
            and self.params.size_exponent
            == self.row.ring.s * self.row.expected_size_exponent
        )

    @property
    def lee_match(self) -> bool:
        return self.params is not None and self.params.lee_distance == self.row.expected_lee

    @property
    def matched(self) -> bool:
        return self.n_match and self.size_match and self.lee_match


@dataclass
class Report:
    rows: list[RowResult]

    @property
    def matched_count(self) -> int:
        return sum(1 for r in self.rows if r.matched)

    @property
    def all_matched(self) -> bool:
        return self.matched_count == len(self.rows)


def _format_size(ring: RingSpec, size_exponent: int) -> str:
    if size_exponent % ring.s == 0:
        return f"{ring.q}^{size_exponent // ring.s}"
    return f"{ring.p}^{size_exponent}"


def parse_manifest(path: str) -> list[ManifestRow]:
    with open(path, encoding="utf-8") as fh:
        lines = [line.rstrip("\n") for line in fh]
    lines = [line for line in lines if line.strip()]
    if not lines:
        return []
    header = lines[0].split("\t")
    header = [h.strip() for h in header]
    for col in _MANIFEST_COLUMNS:
        if col not in header:
            raise NotationError(f"manifest header misses column {col!r}")
    idx = {col: header.index(col) for col in header}
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        cells = line.split("\t")

        def cell(col: str) -> str:
            i = idx.get(col, -1)
            return cells[i].strip() if 0 <= i < len(cells) else ""

        try:
            ring = RingSpec.parse(cell("ring"))
            f = parse_poly(cell("f"), ring)
            gens = tuple(parse_poly(g, ring) for g in cell("gens").split(",") if g)
            if not gens:
                raise NotationError("empty gens cell")
            row = ManifestRow(
                ring,
                f,
                gens,
                int(cell("n")),
                int(cell("k")),
                int(cell("dlee")),
                cell("comment"),
            )
        except (NotationError, ValueError) as exc:
            raise NotationError(f"{path}:{lineno}: {exc}") from None
        if row.expected_n != f.degree * len(gens):
            raise NotationError(
                f"{path}:{lineno}: expected n = {row.expected_n} but deg(f)*l = "
                f"{f.degree * len(gens)}"
            )
        rows.append(row)
    return rows


def _run_row(row: ManifestRow, budget: int) -> RowResult:
    # a handful of published rows use a modulus with non-square-free
    # reduction; the triangular-basis enumeration handles them exactly
    start = time.perf_counter()
    try:
        quotient = QuotientRing(row.ring, row.f, require_squarefree=False)
        generator = QPGenerator(quotient, row.gens)
        params = code_params(generator, budget)
        return RowResult(row, params, None, time.perf_counter() - start)
    except BudgetExceededError as exc:
        return RowResult(row, None, str(exc), time.perf_counter() - start)


def run_manifest(path: str, budget: int = DEFAULT_BUDGET, workers: int | None = None) -> Report:
    """Recompute every manifest row and compare against the expected triple."""
    rows = parse_manifest(path)
    if workers is None:
        workers = max(1, int(os.environ.get("QPC_THREADS", "1")))
    if workers > 1 and len(rows) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda r: _run_row(r, budget), rows))
    else:
        results = [_run_row(r, budget) for r in rows]
    return Report(results)


def _report_json(report: Report) -> dict:
    rows = []
    for res in report.rows:
        entry = {
            "ring": str(res.row.ring),
            "f": render_poly(res.row.f),
            "gens": [render_poly(g) for g in res.row.gens],
            "expected": {
                "n": res.row.expected_n,
                "size": f"{res.row.ring.q}^{res.row.expected_size_exponent}",
                "lee": res.row.expected_lee,
            },
            "matched": res.matched,
        }
        if res.skipped is not None:
            entry["skipped"] = res.skipped
        if res.params is not None:
            entry["computed"] = {
                "n": res.params.n,
                "size": _format_size(res.row.ring, res.params.size_exponent),
                "lee": res.params.lee_distance,
                "hamming": res.params.hamming_distance,
            }
            entry["match_flags"] = {
                "n": res.n_match,
                "size": res.size_match,
                "lee": res.lee_match,
            }
        rows.append(entry)
    return {
        "rows": rows,
        "summary": {
            "total": len(report.rows),
            "matched": report.matched_count,
            "all_matched": report.all_matched,
        },
    }


def _print_report(report: Report) -> None:
    for i, res in enumerate(report.rows, start=1):
        row = res.row
        expected = (
            f"({row.expected_n},{row.ring.q}^{row.expected_size_exponent},{row.expected_lee})"
        )
        if res.skipped is not None:
            print(f"row {i:2d}  {expected:>16}  SKIPPED: {res.skipped}")
            continue
        params = res.params
        computed = (
            f"({params.n},{_format_size(row.ring, params.size_exponent)},{params.lee_distance})"
        )
        status = "ok" if res.matched else "MISMATCH"
        print(
            f"row {i:2d}  expected {expected:>16}  computed {computed:>16}  "
            f"{status}  [{res.wall_time:.2f}s]"
        )
    print(f"{report.matched_count}/{len(report.rows)} rows match")


def bundled_manifest(name: str) -> str:
    """Filesystem path of a bundled manifest such as ``table1.tsv``."""
    ref = resources.files("qpcodes").joinpath("data", name)
    if not ref.is_file():
        raise NotationError(f"no bundled manifest named {name!r}")
    return str(ref)


def _resolve_manifest(arg: str) -> str:
    if os.path.exists(arg):
        return arg
    candidate = arg if arg.endswith(".tsv") else f"{arg}.tsv"
    try:
        return bundled_manifest(candidate)
    except NotationError:
        raise NotationError(f"manifest {arg!r} not found") from None


# ---------------------------------------------------------------------------
# argument helpers


def _ring(args) -> RingSpec:
    return RingSpec.parse(args.ring)


def _quotient(args, ring: RingSpec) -> QuotientRing:
    return QuotientRing(ring, parse_poly(args.f, ring))


def _gens(args, ring: RingSpec) -> list[Poly]:
    return [parse_poly(g, ring) for g in args.gen]


def _qp_generator(args) -> QPGenerator:
    ring = _ring(args)
    quotient = _quotient(args, ring)
    return QPGenerator(quotient, tuple(_gens(args, ring)))


def _linear_code(args) -> LinearCode:
    ring = _ring(args)
    quotient = _quotient(args, ring)
    if args.gen:
        from .duality import LinearCode as LC

        return LC.from_qp_generator(QPGenerator(quotient, tuple(_gens(args, ring))))
    if not args.row:
        raise NotationError("provide --gen components or --row vectors")
    rows = []
    for text in args.row:
        try:
            rows.append([int(v) for v in text.split(",")])
        except ValueError:
            raise NotationError(f"bad row {text!r}") from None
    index = args.index
    if index is None:
        width = len(rows[0])
        if width % quotient.m:
            raise NotationError("row length is not a multiple of deg(f); pass --index")
        index = width // quotient.m
    if any(len(r) != quotient.m * index for r in rows):
        raise NotationError("rows must have length deg(f) * index")
    return LinearCode.from_rows(quotient, index, rows)


def _emit(args, payload: dict, human: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(human)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_parse(args) -> int:
    ring = _ring(args)
    poly = parse_poly(args.poly, ring)
    _emit(
        args,
        {"notation": render_poly(poly), "terms": format_terms(poly), "coeffs": list(poly.coeffs)},
        format_terms(poly),
    )
    return 0


def _cmd_factor(args) -> int:
    ring = _ring(args)
    f = parse_poly(args.f, ring)
    factors = factor_basic_irreducibles(f)
    _emit(
        args,
        {"factors": [render_poly(g) for g in factors]},
        "\n".join(format_terms(g) for g in factors),
    )
    return 0


def _basis_payload(basis) -> dict:
    return {
        "entries": [{"j": j, "g": render_poly(g)} for j, g in basis.entries],
        "size_exponent": cardinality_exponent(basis),
    }


def _basis_human(basis) -> str:
    if basis.is_zero_code():
        return "zero code (empty basis)"
    p = basis.ring.p
    lines = [f"{p}^{j} * ({format_terms(g)})" for j, g in basis.entries]
    return "\n".join(lines)


def _cmd_gb(args) -> int:
    ring = _ring(args)
    quotient = _quotient(args, ring)
    basis = standard_form_from_generators(_gens(args, ring), quotient)
    _emit(args, _basis_payload(basis), _basis_human(basis))
    return 0


def _cmd_ann(args) -> int:
    ring = _ring(args)
    quotient = _quotient(args, ring)
    basis = annihilator(standard_form_from_generators(_gens(args, ring), quotient))
    _emit(args, _basis_payload(basis), _basis_human(basis))
    return 0


def _cmd_card(args) -> int:
    ring = _ring(args)
    quotient = _quotient(args, ring)
    basis = standard_form_from_generators(_gens(args, ring), quotient)
    delta = cardinality_exponent(basis)
    _emit(
        args,
        {"size_exponent": delta},
        f"|C| = {ring.p}^{delta}",
    )
    return 0


def _cmd_genset(args) -> int:
    generator = _qp_generator(args)
    mgs = minimal_generating_set(generator)
    payload = {
        "r": list(mgs.tower.r),
        "size_exponent": mgs.size_exponent(),
        "blocks": [
            {
                "coefficient_modulus": mgs.coefficient_modulus(i),
                "elements": [[render_poly(c) for c in vec] for vec in block],
            }
            for i, block in enumerate(mgs.blocks)
        ],
    }
    lines = [
        f"degrees r = {list(mgs.tower.r)}",
        f"|C| = {generator.ring.p}^{mgs.size_exponent()}",
    ]
    for i, block in enumerate(mgs.blocks):
        if not block:
            continue
        lines.append(f"block {i} (coefficients mod {mgs.coefficient_modulus(i)}):")
        for vec in block:
            lines.append("  (" + ", ".join(format_terms(c) for c in vec) + ")")
    _emit(args, payload, "\n".join(lines))
    return 0


def _cmd_params(args) -> int:
    generator = _qp_generator(args)
    params = code_params(generator, args.budget)
    ring = generator.ring
    human = (
        f"({params.n}, {_format_size(ring, params.size_exponent)}, {params.lee_distance})"
    )
    _emit(
        args,
        {
            "n": params.n,
            "size": _format_size(ring, params.size_exponent),
            "size_exponent": params.size_exponent,
            "lee": params.lee_distance,
            "hamming": params.hamming_distance,
        },
        human,
    )
    return 0


def _cmd_free(args) -> int:
    generator = _qp_generator(args)
    free, rank = is_free(generator)
    human = f"free, rank {rank}" if free else "not free"
    _emit(args, {"free": free, "rank": rank}, human)
    return 0


def _cmd_dual(args) -> int:
    code = _linear_code(args)
    dual = annihilator_dual(code) if args.inner == "f" else euclidean_dual(code)
    payload = {
        "rows": [list(r) for r in dual.rows],
        "size_exponent": dual.size_exponent(),
    }
    human = "\n".join(",".join(str(v) for v in row) for row in dual.rows) or "(zero code)"
    _emit(args, payload, human)
    return 0


def _cmd_check_qp(args) -> int:
    code = _linear_code(args)
    result = is_quasi_polycyclic(code)
    _emit(args, {"quasi_polycyclic": result}, "true" if result else "false")
    return 0


def _cmd_check_qs(args) -> int:
    code = _linear_code(args)
    result = is_quasi_sequential(code)
    _emit(args, {"quasi_sequential": result}, "true" if result else "false")
    return 0


def _cmd_table(args) -> int:
    path = _resolve_manifest(args.manifest)
    report = run_manifest(path, args.budget, args.workers)
    if args.json:
        print(json.dumps(_report_json(report), sort_keys=True))
    else:
        _print_report(report)
    return 0 if report.all_matched else 1


def _add_common(sub, ring=True, f=True, gens=False, rows=False) -> None:
    if ring:
        sub.add_argument("--ring", required=True, help="chain ring p^s, e.g. 2^2")
    if f:
        sub.add_argument("--f", required=True, help="modulus in digit notation")
    if gens:
        sub.add_argument(
            "--gen", action="append", default=[], help="generator (repeatable)"
        )
    if rows:
        sub.add_argument(
            "--row", action="append", default=[], help="code row, comma-separated ints"
        )
        sub.add_argument("--index", type=int, default=None, help="block count l")
    sub.add_argument("--json", action="store_true", help="machine-readable output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qpc",
        description="quasi-polycyclic codes over Z_{p^s}",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("parse", help="expand digit notation")
    sp.add_argument("--ring", required=True)
    sp.add_argument("poly")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=_cmd_parse)

    sp = subs.add_parser("factor", help="basic irreducible factors of f")
    _add_common(sp)
    sp.set_defaults(func=_cmd_factor)

    sp = subs.add_parser("gb", help="standard-form basis of an ideal")
    _add_common(sp, gens=True)
    sp.set_defaults(func=_cmd_gb)

    sp = subs.add_parser("ann", help="annihilator of an ideal")
    _add_common(sp, gens=True)
    sp.set_defaults(func=_cmd_ann)

    sp = subs.add_parser("card", help="cardinality exponent of an ideal")
    _add_common(sp, gens=True)
    sp.set_defaults(func=_cmd_card)

    sp = subs.add_parser("genset", help="minimal generating set of a QP code")
    _add_common(sp, gens=True)
    sp.set_defaults(func=_cmd_genset)

    sp = subs.add_parser("params", help="length, size and exact distances")
    _add_common(sp, gens=True)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.set_defaults(func=_cmd_params)

    sp = subs.add_parser("free", help="freeness test and rank")
    _add_common(sp, gens=True)
    sp.set_defaults(func=_cmd_free)

    sp = subs.add_parser("dual", help="annihilator or Euclidean dual")
    _add_common(sp, gens=True, rows=True)
    sp.add_argument("--inner", choices=["f", "euclid"], default="f")
    sp.set_defaults(func=_cmd_dual)

    sp = subs.add_parser("check-qp", help="is the code quasi-polycyclic?")
    _add_common(sp, gens=True, rows=True)
    sp.set_defaults(func=_cmd_check_qp)

    sp = subs.add_parser("check-qs", help="is the code quasi-sequential?")
    _add_common(sp, gens=True, rows=True)
    sp.set_defaults(func=_cmd_check_qs)

    sp = subs.add_parser("table", help="run a manifest and compare")
    sp.add_argument("manifest", help="TSV path or bundled name (table1, table2)")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--workers", type=int, default=None)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=_cmd_table)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except QPCodesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
