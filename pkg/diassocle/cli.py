"""Batch command line: load fixtures, run verifiers, compute cohomology, deformations, extensions and homotopy checks."""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import pandas as pd

from . import DEFAULT_K, DEFAULT_NMAX, FIXTURES_DIR, default_seed
from .algebra_core import DiassData, RAvgAlgebra, VerificationReport, verify_diass, verify_relative_averaging
from .cochain_engine import Cochain, assemble_delta, derived_bracket, mm_bracket, operator_cochain, pi_of_diass
from .cohomology import COMPLEX_KINDS, assemble_complex, betti_table, euler_report, les_check
from .constructions import adjoint_bimodule, graph_is_subalgebra, nijenhuis_check
from .deformations import (
    apply_equivalence,
    deformation_to_cocycle,
    equivalence_check,
    is_trivial_deformation,
    verify_deformation,
)
from .errors import DiassocleError, FixtureError
from .extensions import (
    canonical_section,
    cocycle_to_extension,
    extension_to_cocycle,
    induced_bimodule,
    verify_extension,
)
from .fixtures import Fixture, canonical_json, cochain_entries, cocycle_report, fixture_catalog, load_fixture, to_document
from .homotopy import (
    GradedOps,
    ainf_from_algebra,
    ainf_rep_from_bimodule,
    diass_inf_from_diass,
    diass_inf_semidirect,
    differential_square_report,
    homotopy_ravg_check,
    induced_diass_inf,
    mc_check_ravg,
    module_samples,
    ravg_linf,
    ravg_mc_element,
    strict_homotopy_check,
    twist_linf,
    verify_ainf,
    verify_ainf_rep,
    verify_diass_inf,
)
from .samples import diass_candidates, make_rng, operator_candidates

LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2

HOMOTOPY_CHECKS = ("ainf", "diassinf", "mc", "twist")


@dataclass
class CommandResult:
    """What a subcommand found: a pass/fail flag, a JSON-ready payload and tables for display."""

    command: str
    ok: bool
    lines: List[str] = field(default_factory=list)
    payload: Dict[str, Any] = field(default_factory=dict)
    tables: Dict[str, pd.DataFrame] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        data = {"command": self.command, "ok": self.ok}
        data.update(self.payload)
        for name, table in sorted(self.tables.items()):
            data[name] = table.to_dict(orient="records")
        return data


def report(result: CommandResult, fmt: str = "text") -> str:
    """Render a result; equal results give byte-identical output."""
    if fmt == "json":
        return canonical_json(result.to_dict())
    lines = [f"{result.command}: {'ok' if result.ok else 'FAILED'}"]
    lines.extend(result.lines)
    for name, table in sorted(result.tables.items()):
        lines.append(f"[{name}]")
        lines.append(table.to_string(index=False) if not table.empty else "(empty)")
    return "\n".join(lines) + "\n"


def _report_lines(verification: VerificationReport, limit: int = 5) -> List[str]:
    lines = [f"{verification.subject}: {'valid' if verification.valid else 'INVALID'} ({verification.checks} checks)"]
    if verification.precondition:
        lines.append(f"  precondition failed: {verification.precondition}")
    for violation in verification.violations[:limit]:
        lines.append(f"  {violation.describe()}")
    if len(verification.violations) > limit:
        lines.append(f"  ... {len(verification.violations) - limit} more violations")
    lines.extend(f"  note: {note}" for note in verification.notes)
    return lines


def _from_reports(command: str, reports: Sequence[VerificationReport], **payload: Any) -> CommandResult:
    ok = all(r.valid for r in reports)
    lines: List[str] = []
    for r in reports:
        lines.extend(_report_lines(r))
    data = {"reports": [r.to_dict() for r in reports]}
    data.update(payload)
    return CommandResult(command, ok, lines, data)


def _require_kind(fixture: Fixture, *kinds: str) -> None:
    if fixture.kind not in kinds:
        raise FixtureError(f"{fixture.source or fixture.name} is a {fixture.kind} fixture; expected {' or '.join(kinds)}")


def _require_valid(command: str, fixture: Fixture) -> Optional[CommandResult]:
    """A failed result carrying the fixture's own report when it does not verify."""
    if fixture.valid:
        return None
    result = _from_reports(command, [fixture.report])
    result.lines.insert(0, f"{fixture.source or fixture.name} does not verify; nothing else was computed")
    return result


def _same_ravg(first: RAvgAlgebra, second: RAvgAlgebra) -> bool:
    return (
        first.A.mu == second.A.mu
        and first.M.left == second.M.left
        and first.M.right == second.M.right
        and first.P == second.P
    )


def _cochain_payload(c: Cochain) -> Dict[str, Any]:
    return {"arity": c.arity, "zero": c.is_zero(), "entries": cochain_entries(c, prefix="e")}


# ---------------------------------------------------------------------------
# subcommands


def cmd_verify(args: argparse.Namespace) -> CommandResult:
    fixture = load_fixture(args.file)
    result = _from_reports("verify", [fixture.report], fixture={"kind": fixture.kind, "name": fixture.name, "source": fixture.source})
    if args.samples and fixture.valid and fixture.kind in ("ravg", "diass"):
        seed = default_seed() if args.seed is None else args.seed
        rng = make_rng(seed)
        table = _operator_sweep(fixture.value, rng, args.samples) if fixture.kind == "ravg" else _diass_sweep(fixture.value, rng, args.samples)
        agree = bool(table["agree"].all())
        result.ok = result.ok and agree
        result.tables["candidates"] = table
        result.lines.append(f"seeded candidates: {int(table['agree'].sum())}/{len(table)} agree (seed {seed})")
    return result


def _operator_sweep(R: RAvgAlgebra, rng: Any, count: int) -> pd.DataFrame:
    """Each candidate P judged by the identities, the graph, the Nijenhuis test and ⟦P,P⟧ = 0."""
    records = []
    for k, P in enumerate(operator_candidates(R, rng, count)):
        candidate = R.with_operator(P)
        direct = verify_relative_averaging(candidate, check_base=False).valid
        graph = graph_is_subalgebra(candidate)
        nijenhuis = nijenhuis_check(candidate)
        p = operator_cochain(candidate)
        mc = derived_bracket(p, p, candidate).is_zero()
        records.append(
            {"candidate": k, "identities": direct, "graph": graph, "nijenhuis": nijenhuis, "maurer_cartan": mc, "agree": direct == graph == nijenhuis == mc}
        )
    return pd.DataFrame.from_records(records, columns=["candidate", "identities", "graph", "nijenhuis", "maurer_cartan", "agree"])


def _diass_sweep(D: DiassData, rng: Any, count: int) -> pd.DataFrame:
    records = []
    for k, candidate in enumerate(diass_candidates(D, rng, count)):
        direct = verify_diass(candidate).valid
        pi = pi_of_diass(candidate)
        mc = mm_bracket(pi, pi).is_zero()
        records.append({"candidate": k, "identities": direct, "maurer_cartan": mc, "agree": direct == mc})
    return pd.DataFrame.from_records(records, columns=["candidate", "identities", "maurer_cartan", "agree"])


def _bracket_input(token: str, fixture: Fixture, op: str) -> Cochain:
    own = {"mm": ("pi", "delta"), "derived": ("P",)}[op]
    if token in own:
        if op == "derived":
            return operator_cochain(fixture.value)
        if fixture.kind == "diass":
            return pi_of_diass(fixture.value)
        return assemble_delta(fixture.value.A, fixture.value.M)
    other = load_fixture(token)
    if op == "derived":
        _require_kind(other, "ravg")
        return operator_cochain(other.value)
    _require_kind(other, fixture.kind)
    if other.kind == "diass":
        return pi_of_diass(other.value)
    return assemble_delta(other.value.A, other.value.M)


def cmd_bracket(args: argparse.Namespace) -> CommandResult:
    fixture = load_fixture(args.file)
    if args.op == "derived":
        _require_kind(fixture, "ravg")
        default = "P"
    else:
        _require_kind(fixture, "diass", "ravg")
        default = "pi" if fixture.kind == "diass" else "delta"
    tokens = list(args.inputs) if args.inputs else [default, default]
    if len(tokens) != 2:
        raise FixtureError(f"a bracket takes two inputs, got {len(tokens)}")
    f, g = (_bracket_input(t, fixture, args.op) for t in tokens)
    if args.op == "derived":
        value = derived_bracket(f, g, fixture.value)
    else:
        value = mm_bracket(f, g)
    self_bracket = all(t == default for t in tokens)
    result = CommandResult("bracket", ok=not self_bracket or value.is_zero())
    result.payload = {"op": args.op, "inputs": tokens, "bracket": _cochain_payload(value)}
    name = "⟦P,P⟧" if args.op == "derived" else "[π,π]"
    if self_bracket:
        result.payload["maurer_cartan"] = value.is_zero()
        result.lines.append(f"{name} {'vanishes' if value.is_zero() else 'does not vanish'}")
    else:
        result.lines.append(f"bracket of arity {value.arity} with {len(value.table)} nonzero entries")
    for entry in result.payload["bracket"]["entries"][:8]:
        result.lines.append(f"  {entry.get('tree', '')} {entry['inputs']} -> {entry['value']}")
    return result


def _coefficients(args: argparse.Namespace, R: RAvgAlgebra) -> Any:
    if not args.coeffs:
        return None
    coeffs = load_fixture(args.coeffs)
    _require_kind(coeffs, "ravg-bimodule")
    if not _same_ravg(coeffs.value.base, R):
        raise FixtureError(f"{coeffs.source} is a bimodule over a different relative averaging algebra")
    return coeffs.value


def cmd_cohomology(args: argparse.Namespace) -> CommandResult:
    fixture = load_fixture(args.file)
    failed = _require_valid("cohomology", fixture)
    if failed:
        return failed
    if fixture.kind == "diass":
        if args.complex != "diass":
            raise FixtureError("a diass fixture only has the diass complex")
        structure: Any = (fixture.value, fixture.extras["rep"])
        coeffs = None
    else:
        _require_kind(fixture, "ravg")
        structure = fixture.value
        coeffs = _coefficients(args, fixture.value)
    spec = assemble_complex(args.complex, structure, args.nmax, coeffs=coeffs, jobs=args.jobs, cache_dir=args.cache_dir)
    table = betti_table(spec)
    euler = euler_report(spec)
    result = CommandResult("cohomology", ok=bool(euler["consistent"].all()))
    result.payload = {"complex": spec.name, "nmax": spec.nmax}
    result.tables = {"betti": table, "euler": euler}
    result.lines.append(f"complex {spec.name} up to degree {spec.nmax}: dim H = {table['dim_H'].tolist()}")
    return result


def cmd_les(args: argparse.Namespace) -> CommandResult:
    fixture = load_fixture(args.file)
    _require_kind(fixture, "ravg")
    failed = _require_valid("les", fixture)
    if failed:
        return failed
    les = les_check(fixture.value, args.nmax, coeffs=_coefficients(args, fixture.value), jobs=args.jobs, cache_dir=args.cache_dir)
    result = CommandResult("les", ok=les.exact)
    result.payload = {"exact": les.exact, "failures": list(les.failures)}
    result.tables = {"nodes": les.nodes}
    count = len(les.nodes)
    result.lines.append(f"exact at {count} nodes" if les.exact else f"not exact: {len(les.failures)} of {count} nodes fail")
    result.lines.extend(f"  {failure}" for failure in les.failures)
    return result


def cmd_deform(args: argparse.Namespace) -> CommandResult:
    fixture = load_fixture(args.file)
    _require_kind(fixture, "ravg")
    jet_fixture = load_fixture(args.jet)
    _require_kind(jet_fixture, "jet")
    J = jet_fixture.value
    if not _same_ravg(J.base, fixture.value):
        raise FixtureError(f"{jet_fixture.source} deforms a different relative averaging algebra")
    reports = [jet_fixture.report]
    payload: Dict[str, Any] = {"order": J.order}
    if jet_fixture.valid:
        c = deformation_to_cocycle(J)
        payload["cocycle"] = to_document("cocycle", c, name=f"{jet_fixture.name} cocycle", base=Path(args.file).name)
        payload["trivial"] = is_trivial_deformation(J.truncate(1))
    if args.equiv:
        equiv = load_fixture(args.equiv)
        _require_kind(equiv, "equivalence")
        moved = apply_equivalence(J, equiv.value)
        reports.append(verify_deformation(moved))
        reports.append(equivalence_check(J, moved, equiv.value))
    result = _from_reports("deform", reports, **payload)
    if "trivial" in payload:
        result.lines.append(f"infinitesimal class is {'trivial' if payload['trivial'] else 'nontrivial'}")
    return result


def cmd_extension(args: argparse.Namespace) -> CommandResult:
    fixture = load_fixture(args.file)
    _require_kind(fixture, "ravg")
    failed = _require_valid("extension", fixture)
    if failed:
        return failed
    R = fixture.value
    base_ref = Path(args.file).name
    if args.cocycle:
        cocycle = load_fixture(args.cocycle)
        _require_kind(cocycle, "cocycle")
        if not cocycle.valid:
            return _from_reports("extension", [cocycle.report])
        coeffs = cocycle.extras.get("coeffs") or adjoint_bimodule(R)
        E = cocycle_to_extension(cocycle.value, R, coeffs)
        return _from_reports("extension", [verify_extension(E)], extension=to_document("extension", E, name=f"{cocycle.name} extension", base=base_ref))
    extension = load_fixture(args.extract)
    _require_kind(extension, "extension")
    E = extension.value
    if not _same_ravg(E.base, R):
        raise FixtureError(f"{extension.source} extends a different relative averaging algebra")
    if args.section:
        section = load_fixture(args.section)
        _require_kind(section, "section")
        sec = section.value
        reports = [extension.report, section.report]
    else:
        sec = canonical_section(E)
        reports = [extension.report]
    if not all(r.valid for r in reports):
        return _from_reports("extension", reports)
    c = extension_to_cocycle(E, sec)
    reports.append(cocycle_report(c, R, induced_bimodule(E, sec)))
    return _from_reports("extension", reports, cocycle=to_document("cocycle", c, name=f"{extension.name} cocycle", base=base_ref))


def _with_arity(ops: GradedOps, max_arity: int) -> GradedOps:
    kept = {k: v for k, v in ops.ops.items() if k <= max_arity}
    return GradedOps(ops.kind, ops.space, kept, max_arity, ops.degree, ops.base)


def _homotopy_graded(args: argparse.Namespace, fixture: Fixture) -> CommandResult:
    graded = fixture.value
    A, M = _with_arity(graded.algebra, args.K), _with_arity(graded.rep, args.K)
    if args.check == "ainf":
        return _from_reports("homotopy", [verify_ainf(A), verify_ainf_rep(A, M)], check=args.check, K=args.K)
    if args.check == "diassinf":
        return _from_reports("homotopy", [verify_diass_inf(diass_inf_semidirect(A, M))], check=args.check, K=args.K)
    if graded.operator is None:
        raise FixtureError(f"{fixture.source} declares no operator P")
    if args.check == "mc":
        mc = homotopy_ravg_check(A, M, graded.operator, max_arity=args.K)
        strict = strict_homotopy_check(A, M, graded.operator)
        result = _from_reports("homotopy", [strict], check=args.check, K=args.K, maurer_cartan=mc, agree=mc == strict.valid)
        result.ok = result.ok and mc
        result.lines.append(f"Maurer–Cartan equation {'holds' if mc else 'fails'}; strict identity {'holds' if strict.valid else 'fails'}")
        return result
    if not homotopy_ravg_check(A, M, graded.operator, max_arity=args.K):
        result = _from_reports("homotopy", [], check=args.check, K=args.K, maurer_cartan=False)
        result.ok = False
        result.lines.append("P is not a homotopy relative averaging operator; nothing to twist by")
        return result
    induced = induced_diass_inf(A, M, graded.operator, check=False)
    return _from_reports("homotopy", [verify_diass_inf(induced)], check=args.check, K=args.K, induced=induced.to_dict())


def _homotopy_ungraded(args: argparse.Namespace, fixture: Fixture) -> CommandResult:
    if fixture.kind == "diass":
        if args.check != "diassinf":
            raise FixtureError("a diass fixture supports only the diassinf check")
        return _from_reports("homotopy", [verify_diass_inf(diass_inf_from_diass(fixture.value, max_arity=args.K))], check=args.check, K=args.K)
    R = fixture.value
    A = ainf_from_algebra(R.A, max_arity=args.K)
    M = ainf_rep_from_bimodule(R.M, max_arity=args.K)
    if args.check == "ainf":
        return _from_reports("homotopy", [verify_ainf(A), verify_ainf_rep(A, M)], check=args.check, K=args.K)
    if args.check == "diassinf":
        return _from_reports("homotopy", [verify_diass_inf(diass_inf_semidirect(A, M))], check=args.check, K=args.K)
    mc = mc_check_ravg(R.A, R.M, R.P, max_arity=args.K)
    direct = fixture.report
    if args.check == "mc":
        result = _from_reports("homotopy", [direct], check=args.check, K=args.K, maurer_cartan=mc, agree=mc == direct.valid)
        result.ok = result.ok and mc
        result.lines.append(f"Maurer–Cartan equation {'holds' if mc else 'fails'}")
        return result
    if not mc:
        result = _from_reports("homotopy", [direct], check=args.check, K=args.K, maurer_cartan=False)
        result.ok = False
        result.lines.append("(s⁻¹Δ, P) is not Maurer–Cartan; nothing to twist by")
        return result
    L, _ = ravg_linf(R.A, R.M, max_arity=args.K)
    twisted = twist_linf(L, ravg_mc_element(R.A, R.M, R.P), check=False)
    squares = differential_square_report(twisted, module_samples(R.A.dim, R.M.dim, min(2, args.K)))
    return _from_reports("homotopy", [squares], check=args.check, K=args.K, maurer_cartan=True)


def cmd_homotopy(args: argparse.Namespace) -> CommandResult:
    fixture = load_fixture(args.file)
    _require_kind(fixture, "ravg", "diass", "graded-ops")
    failed = _require_valid("homotopy", fixture) if args.check != "mc" else None
    if failed:
        return failed
    if fixture.kind == "graded-ops":
        return _homotopy_graded(args, fixture)
    return _homotopy_ungraded(args, fixture)


def cmd_fixtures(args: argparse.Namespace) -> CommandResult:
    directory = Path(args.directory) if args.directory else FIXTURES_DIR
    table = fixture_catalog(directory)
    result = CommandResult("fixtures", ok=bool(table["valid"].all()) if not table.empty else True)
    result.tables = {"fixtures": table}
    result.lines.append(f"{len(table)} fixtures in {directory.name}")
    return result


COMMANDS: Dict[str, Callable[[argparse.Namespace], CommandResult]] = {
    "verify": cmd_verify,
    "bracket": cmd_bracket,
    "cohomology": cmd_cohomology,
    "les": cmd_les,
    "deform": cmd_deform,
    "extension": cmd_extension,
    "homotopy": cmd_homotopy,
    "fixtures": cmd_fixtures,
}


# ---------------------------------------------------------------------------
# entry point


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text", help="Report format.")
    common.add_argument("--seed", type=int, default=None, help="Seed for randomized checks (default: DIASSOCLE_SEED or the built-in seed).")
    common.add_argument("--nmax", type=int, default=DEFAULT_NMAX, help=f"Top cochain degree (default: {DEFAULT_NMAX}).")
    common.add_argument("--K", type=int, default=DEFAULT_K, help=f"Truncation arity for homotopy structures (default: {DEFAULT_K}).")
    common.add_argument("--jobs", type=int, default=1, help="Worker processes for coboundary assembly.")
    common.add_argument("--cache-dir", default=None, help="Directory for cached complexes.")
    common.add_argument(
        "--log-level",
        default="WARNING",
        choices=["CRITICAL", "ERROR", "WARNING", "INFO", "DEBUG"],
        help="Logging verbosity (logs go to stderr).",
    )
    return common


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    common = _common_options()
    parser = argparse.ArgumentParser(prog="diassocle", description="Exact checks for diassociative and relative averaging algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", parents=[common], help="Load a fixture and report its verification.")
    verify.add_argument("file")
    verify.add_argument("--samples", type=int, default=0, help="Also compare the criteria on this many seeded candidates.")

    bracket = sub.add_parser("bracket", parents=[common], help="Evaluate a bracket of cochains.")
    bracket.add_argument("file")
    bracket.add_argument("--op", choices=["mm", "derived"], required=True)
    bracket.add_argument("--inputs", nargs="*", default=None, help="Two inputs: P, pi, delta or paths to fixtures.")

    cohomology = sub.add_parser("cohomology", parents=[common], help="Betti numbers of a cochain complex.")
    cohomology.add_argument("file")
    cohomology.add_argument("--complex", choices=list(COMPLEX_KINDS), required=True)
    cohomology.add_argument("--coeffs", default=None, help="A ravg-bimodule fixture for the coefficients.")

    les = sub.add_parser("les", parents=[common], help="Check the long exact sequence.")
    les.add_argument("file")
    les.add_argument("--coeffs", default=None)

    deform = sub.add_parser("deform", parents=[common], help="Verify a deformation jet and optional equivalence.")
    deform.add_argument("file")
    deform.add_argument("--jet", required=True)
    deform.add_argument("--equiv", default=None)

    extension = sub.add_parser("extension", parents=[common], help="Build or classify abelian extensions.")
    extension.add_argument("file")
    source = extension.add_mutually_exclusive_group(required=True)
    source.add_argument("--cocycle", default=None)
    source.add_argument("--extract", default=None)
    extension.add_argument("--section", default=None)

    homotopy = sub.add_parser("homotopy", parents=[common], help="Truncated homotopy checks.")
    homotopy.add_argument("file")
    homotopy.add_argument("--check", choices=list(HOMOTOPY_CHECKS), required=True)

    fixtures = sub.add_parser("fixtures", parents=[common], help="List the shipping fixtures.")
    fixtures.add_argument("--directory", default=None)

    args = parser.parse_args(argv)
    if args.command == "extension" and args.section and not args.extract:
        parser.error("--section goes with --extract")
    if args.nmax < 0 or args.K < 1 or args.jobs < 1:
        parser.error("--nmax must be ≥ 0, --K and --jobs ≥ 1")
    return args


def configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format="%(asctime)s | %(levelname)s | %(message)s",
        stream=sys.stderr,
    )


def run(argv: Optional[List[str]] = None) -> int:
    args = parse_args(argv)
    configure_logging(args.log_level)
    try:
        result = COMMANDS[args.command](args)
    except (DiassocleError, OSError) as exc:
        LOGGER.error("%s failed: %s", args.command, exc)
        return EXIT_INPUT
    sys.stdout.write(report(result, args.format))
    LOGGER.info("Command finished | command=%s ok=%s", args.command, result.ok)
    return EXIT_OK if result.ok else EXIT_FAILED


def main(argv: Optional[List[str]] = None) -> None:
    raise SystemExit(run(argv))


if __name__ == "__main__":
    main(sys.argv[1:])
