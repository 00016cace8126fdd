"""Command-line entry point.

One subcommand per task, file-based inputs and outputs. Every report
starts with comment lines carrying the exact invocation and the SHA-256 of
each input file, so results are replayable; randomized subcommands demand
an explicit --seed. Outputs contain no timestamps and are stable across
runs for fixed inputs.

Exit codes: 0 when the operation completed (findings such as violations
still exit 0), 2 for bad arguments, 1 for I/O failures.
"""

from __future__ import annotations

import argparse
import hashlib
import os
import sys

from . import __version__
from .cycles import (
    find_shared_check_six_cycles,
    find_theta222,
    find_theta222_exponent,
    girth_exponent,
    girth_lifted,
)
from .designer import SearchConfig, check_constraints, search
from .ets import (
    VnConstraintSet,
    dump_ets_instance,
    dump_vn_graph,
    feasible_vn_graphs,
    find_ets_in_code,
    min_ets_size,
)
from .exponent import ParseError, format_exponent_matrix, parse_exponent_matrix
from .simulate import (
    CSV_HEADER,
    DecoderConfig,
    code_rates,
    estimate_fer,
)
from .tanner import export_alist, lift
from .turan import (
    brute_force_ex,
    ex_theta122,
    ex_upper_c3_theta222,
    min_a_for_b,
)


def _env_int(name: str, fallback: int | None):
    """Budget defaults can be overridden via QCLDPC_* environment variables."""
    value = os.environ.get(name)
    return int(value) if value else fallback


def _read_matrix(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    digest = hashlib.sha256(text.encode()).hexdigest()
    return parse_exponent_matrix(text), f"{path} sha256={digest}"


def _header(args, inputs=()):
    lines = [f"# qcldpc {__version__}: " + " ".join(args)]
    for note in inputs:
        lines.append(f"# input {note}")
    return lines


def _emit(text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _constraints_from(regime: str, gamma: int, connected: bool = True) -> VnConstraintSet:
    if regime == "girth6":
        cs = VnConstraintSet.girth6(gamma)
    else:
        cs = VnConstraintSet.girth8(gamma)
    if not connected:
        cs = VnConstraintSet(
            gamma,
            forbid_triangle=cs.forbid_triangle,
            forbid_theta122=cs.forbid_theta122,
            forbid_theta222=cs.forbid_theta222,
            connected_only=False,
        )
    return cs


def _cmd_verify(ns, argv):
    m, note = _read_matrix(ns.matrix)
    cfg = SearchConfig(
        m.gamma, m.eta, m.p, girth=ns.girth, forbid=tuple(ns.forbid), seed=0
    )
    report = check_constraints(m, cfg)
    lines = _header(argv, [note])
    lines.append(f"matrix: gamma={m.gamma} eta={m.eta} p={m.p}")
    lines.append(f"target_girth: {ns.girth}")
    for length, count in sorted(report.cycle_counts.items()):
        lines.append(f"zero_chains_{length}: {count}")
    for kind, count in sorted(report.theta_counts.items()):
        lines.append(f"{kind}_witnesses: {count}")
    g = girth_exponent(m, cap=12)
    lines.append(f"girth_exponent: {g if g is not None else '>= 14'}")
    lines.append(f"compliant: {'yes' if report.compliant else 'no'}")
    _emit("\n".join(lines) + "\n", ns.out)
    return 0


def _cmd_girth(ns, argv):
    m, note = _read_matrix(ns.matrix)
    lines = _header(argv, [note])
    g = girth_exponent(m, cap=ns.cap)
    lines.append(f"girth_exponent: {g if g is not None else f'>= {ns.cap + 2}'}")
    if ns.lifted:
        gl = girth_lifted(lift(m))
        lines.append(f"girth_lifted: {gl if gl is not None else 'acyclic'}")
    _emit("\n".join(lines) + "\n", ns.out)
    return 0


def _cmd_theta(ns, argv):
    m, note = _read_matrix(ns.matrix)
    lines = _header(argv, [note])
    if ns.pattern == "theta222":
        if ns.level == "exponent":
            witnesses = find_theta222_exponent(m)
        else:
            witnesses = find_theta222(lift(m))
        lines.append(f"# witnesses: {len(witnesses)}")
        lines.extend(w.to_line() for w in witnesses)
    else:
        if ns.level == "exponent":
            raise SystemExit("theta122 detection runs on the lifted graph; use --level lifted")
        pairs = find_shared_check_six_cycles(lift(m))
        lines.append(f"# checks with multiple 6-cycles: {len(pairs)}")
        for chk, (vars_a, chks_a), (vars_b, chks_b) in pairs:
            lines.append(
                f"shared_check {chk} cycle_a vars={','.join(map(str, vars_a))} "
                f"checks={','.join(map(str, chks_a))} cycle_b "
                f"vars={','.join(map(str, vars_b))} checks={','.join(map(str, chks_b))}"
            )
    _emit("\n".join(lines) + "\n", ns.out)
    return 0


def _cmd_turan(ns, argv):
    lines = _header(argv)
    family = set(ns.forbid)
    if ns.exact:
        result = brute_force_ex(ns.n, family)
        lines.append(f"ex({ns.n}, {{{','.join(sorted(family))}}}) = {result.value} (exact)")
        lines.append("witness:")
        lines.append(dump_vn_graph(result.witness).rstrip("\n"))
    else:
        if family == {"theta122"}:
            lines.append(f"ex({ns.n}, {{theta122}}) = {ex_theta122(ns.n).value} (exact closed form)")
        elif family == {"c3", "theta222"}:
            lines.append(
                f"ex({ns.n}, {{c3,theta222}}) <= {ex_upper_c3_theta222(ns.n):.6f} (upper bound)"
            )
        else:
            raise SystemExit(
                "closed forms exist for --forbid theta122 and --forbid c3 --forbid theta222; "
                "use --exact for other families"
            )
    _emit("\n".join(lines) + "\n", ns.out)
    return 0


def _cmd_bounds(ns, argv):
    lines = _header(argv)
    if ns.b is not None:
        b_values = [int(x) for x in ns.b.split(",")]
    else:
        b_values = [b for b in range(ns.gamma + 1) if ns.gamma % 2 == 1 or b % 2 == 0]
    header = "b,bound_min_a"
    if ns.with_actual:
        header += ",actual_min_a"
    lines.append(header)
    for b in b_values:
        row = f"{b},{min_a_for_b(b, ns.gamma, ns.regime)}"
        if ns.with_actual:
            cs = _constraints_from(ns.regime, ns.gamma)
            actual = min_ets_size(ns.gamma, b, cs, a_cap=ns.a_cap)
            row += f",{actual if actual is not None else f'none<={ns.a_cap}'}"
        lines.append(row)
    _emit("\n".join(lines) + "\n", ns.out)
    return 0


def _cmd_min_ets(ns, argv):
    lines = _header(argv)
    cs = _constraints_from(ns.regime, ns.gamma)
    a = min_ets_size(ns.gamma, ns.b, cs, a_cap=ns.a_cap)
    if a is None:
        lines.append(f"min_a: none within a <= {ns.a_cap}")
    else:
        lines.append(f"min_a: {a}")
        if ns.witness:
            e = (a * ns.gamma - ns.b) // 2
            _, wits = feasible_vn_graphs(a, e, cs, max_witnesses=1)
            lines.append("witness:")
            lines.append(dump_vn_graph(wits[0]).rstrip("\n"))
    _emit("\n".join(lines) + "\n", ns.out)
    return 0


def _cmd_find_ets(ns, argv):
    m, note = _read_matrix(ns.matrix)
    t = lift(m)
    result = find_ets_in_code(t, ns.a_max, ns.b_max, max_nodes=ns.max_nodes)
    lines = _header(argv, [note])
    lines.append(f"# instances: {len(result.instances)} complete: {'yes' if result.complete else 'no'}")
    for inst in result.instances:
        lines.append(dump_ets_instance(inst).rstrip("\n"))
    _emit("\n".join(lines) + "\n", ns.out)
    return 0


def _cmd_search(ns, argv):
    cfg = SearchConfig(
        ns.gamma,
        ns.eta,
        ns.p,
        girth=ns.girth,
        forbid=tuple(ns.forbid),
        normalized=not ns.no_normalize,
        seed=ns.seed,
        max_attempts=ns.max_attempts,
        max_repair_passes=ns.max_passes,
    )
    report = search(cfg)
    lines = _header(argv)
    lines.append(f"# attempts: {report.attempts_used} success: {'yes' if report.success else 'no'}")
    if report.success:
        lines.append(f"# succeeded_attempt: {report.succeeded_attempt}")
        body = "\n".join(lines) + "\n" + format_exponent_matrix(report.matrix)
    else:
        lines.append(f"# best candidate violations: {report.final_violations.summary()}")
        body = "\n".join(lines) + "\n"
    _emit(body, ns.out)
    return 0


def _cmd_simulate(ns, argv):
    m, note = _read_matrix(ns.matrix)
    snrs = [float(x) for x in ns.snr.split(",")]
    cfg = DecoderConfig(max_iterations=ns.max_iter, llr_clamp=ns.clamp)
    points = estimate_fer(
        m,
        snrs,
        seed=ns.seed,
        min_errors=ns.min_errors,
        max_frames=ns.max_frames,
        cfg=cfg,
        workers=ns.threads,
    )
    nominal, true_rate = code_rates(m)
    lines = _header(argv, [note])
    lines.append(f"# nominal_rate: {nominal:.6f} true_rate: {true_rate:.6f}")
    lines.append(CSV_HEADER)
    lines.extend(p.csv_row() for p in points)
    _emit("\n".join(lines) + "\n", ns.out)
    return 0


def _cmd_export_alist(ns, argv):
    m, note = _read_matrix(ns.matrix)
    _emit(export_alist(m), ns.out)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcldpc",
        description="QC-LDPC codes free of theta-graph patterns: design, verification, bounds, simulation",
    )
    parser.add_argument("--threads", type=int, default=1, help="worker processes for the simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check a matrix against girth and theta constraints")
    p.add_argument("matrix")
    p.add_argument("--girth", type=int, default=8, choices=(6, 8))
    p.add_argument(
        "--forbid", action="append", default=None, choices=("theta122", "theta222"),
        help="repeatable; defaults to the pattern of the girth regime",
    )
    p.add_argument("--out")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("girth", help="girth from the exponent matrix (optionally the lifted graph)")
    p.add_argument("matrix")
    p.add_argument("--cap", type=int, default=12, choices=(4, 6, 8, 10, 12))
    p.add_argument("--lifted", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_girth)

    p = sub.add_parser("theta", help="list theta-pattern witnesses")
    p.add_argument("matrix")
    p.add_argument("--pattern", default="theta222", choices=("theta122", "theta222"))
    p.add_argument("--level", default="exponent", choices=("exponent", "lifted"))
    p.add_argument("--out")
    p.set_defaults(func=_cmd_theta)

    p = sub.add_parser("turan", help="Turan numbers: closed forms or the exhaustive oracle")
    p.add_argument("--n", type=int, required=True)
    p.add_argument(
        "--forbid", action="append", required=True, choices=("c3", "theta122", "theta222")
    )
    p.add_argument("--exact", action="store_true", help="run the exhaustive search (n <= 9)")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_turan)

    p = sub.add_parser("bounds", help="closed-form minimum trapping-set sizes per b (CSV)")
    p.add_argument("--gamma", type=int, required=True)
    p.add_argument("--regime", default="girth6", choices=("girth6", "girth8"))
    p.add_argument("--b", help="comma-separated b values (default: 0..gamma, admissible parity)")
    p.add_argument("--with-actual", action="store_true", help="add the enumeration column")
    p.add_argument("--a-cap", type=int, default=_env_int("QCLDPC_A_CAP", 12))
    p.add_argument("--out")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("min-ets", help="smallest feasible trapping set by enumeration")
    p.add_argument("--gamma", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--regime", default="girth8", choices=("girth6", "girth8"))
    p.add_argument("--a-cap", type=int, default=_env_int("QCLDPC_A_CAP", 12))
    p.add_argument("--witness", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_min_ets)

    p = sub.add_parser("find-ets", help="search a code for small trapping sets")
    p.add_argument("matrix")
    p.add_argument("--a-max", type=int, required=True)
    p.add_argument("--b-max", type=int, required=True)
    p.add_argument("--max-nodes", type=int, default=_env_int("QCLDPC_MAX_NODES", None))
    p.add_argument("--out")
    p.set_defaults(func=_cmd_find_ets)

    p = sub.add_parser("search", help="random search for a compliant exponent matrix")
    p.add_argument("--gamma", type=int, required=True)
    p.add_argument("--eta", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--girth", type=int, default=8, choices=(6, 8))
    p.add_argument(
        "--forbid", action="append", default=None, choices=("theta122", "theta222"),
        help="repeatable; defaults to the pattern of the girth regime",
    )
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--max-attempts", type=int, default=_env_int("QCLDPC_MAX_ATTEMPTS", 64))
    p.add_argument("--max-passes", type=int, default=_env_int("QCLDPC_MAX_PASSES", 400))
    p.add_argument("--no-normalize", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("simulate", help="Monte Carlo FER sweep (CSV)")
    p.add_argument("matrix")
    p.add_argument("--snr", required=True, help="comma-separated Eb/N0 values in dB")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--min-errors", type=int, default=_env_int("QCLDPC_MIN_ERRORS", 100))
    p.add_argument("--max-frames", type=int, default=_env_int("QCLDPC_MAX_FRAMES", 10_000_000))
    p.add_argument("--max-iter", type=int, default=_env_int("QCLDPC_MAX_ITER", 50))
    p.add_argument("--clamp", type=float, default=25.0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("export-alist", help="alist serialization of the lifted matrix")
    p.add_argument("matrix")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_export_alist)

    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    ns = parser.parse_args(argv)
    if ns.command in ("verify", "search") and ns.forbid is None:
        ns.forbid = ["theta222"] if getattr(ns, "girth", 8) == 8 else ["theta122"]
    try:
        return ns.func(ns, ["qcldpc"] + argv)
    except OSError as exc:
        print(f"qcldpc: {exc}", file=sys.stderr)
        return 1
    except ParseError as exc:
        print(f"qcldpc: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
