"""``twistcode`` command line."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .characters import multiplicity, norm
from .codes import build_code, kl_check, measure_distance, transversal_check
from .config import Config
from .cyclotomic import set_conductor_cap
from .data import GroupBundle, resolve
from .errors import TwistcodeError, ValidationError
from .lie import UIrrep, branch, decompose_FFstar_power
from .tgroups import is_twisted_tgroup, is_unitary_tgroup, scan

EXIT_FAILED = 1


def parse_range(text: str) -> list[int]:
    """``"7"``, ``"1..13"`` or ``"5,8,11"``."""
    out: list[int] = []
    try:
        for part in text.split(","):
            if ".." in part:
                lo, hi = part.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise ValidationError(f"bad range {text!r}; use e.g. 1..13 or 5,8,11") from None
    if not out or min(out) < 0:
        raise ValidationError(f"bad range {text!r}")
    return out


def parse_irrep(text: str, q: int) -> UIrrep:
    """A weight like ``[3,0,-3]`` or, for U(2), an odd dimension like ``7``."""
    text = text.strip()
    if text.startswith("["):
        return UIrrep.from_weight(tuple(int(x) for x in text.strip("[]").split(",")))
    if q == 2 and text.isdigit() and int(text) % 2 == 1:
        k = (int(text) - 1) // 2
        return UIrrep.from_weight((k, -k))
    raise ValidationError(f"cannot read U({q}) irrep {text!r}; give a weight such as [2,0,-2]")


class Report:
    def __init__(self, bundle: GroupBundle | None, command: str):
        self.bundle = bundle
        self.data: dict = {"schema_version": "1", "command": command}
        if bundle is not None:
            self.data["group"] = bundle.name
            self.data["alignment"] = {
                "columns_to_classes": [c + 1 for c in bundle.table.alignment],
                "fundamental": bundle.fundamental_name,
                "consistent_alignments": bundle.table.alignment_candidates,
            }
        self.lines: list[str] = []
        if bundle is not None:
            self.lines.append(f"# {bundle.alignment_report()}")

    def emit(self, fmt: str) -> None:
        if fmt == "json":
            print(json.dumps(self.data, indent=2))
        else:
            print("\n".join(self.lines))


def _config(args) -> Config:
    return Config.from_env(seed=args.seed, dim_cap=args.dim_cap, kl_tol=args.kl_tol)


def _bundle(args) -> GroupBundle:
    cfg = _config(args)
    set_conductor_cap(cfg.conductor_cap)
    return resolve(args.group, args.table, cap=cfg.group_cap)


def cmd_classes(args) -> int:
    b = _bundle(args)
    g = b.group
    rep = Report(b, "classes")
    rows = [{"class": i + 1, "order": o, "size": s, "trace": str(t)}
            for i, (o, s, t) in enumerate(zip(g.class_orders, g.class_sizes, g.class_traces))]
    rep.data.update(order=g.order, classes=rows)
    rep.lines.append(f"|G| = {g.order}, {g.num_classes} classes")
    rep.lines.append(f"{'class':>5} {'order':>5} {'size':>5}  trace")
    rep.lines += [f"{r['class']:>5} {r['order']:>5} {r['size']:>5}  {r['trace']}" for r in rows]
    rep.emit(args.format)
    return 0


def cmd_norms(args) -> int:
    b = _bundle(args)
    lam = b.table[args.lam]
    vals = [norm(lam * b.f**k) for k in range(1, args.t + 1)]
    rep = Report(b, "norms")
    rep.data.update(lam=args.lam, norms={str(k): v for k, v in enumerate(vals, 1)})
    rep.lines += [f"||{args.lam} * f^{k}|| = {v}" for k, v in enumerate(vals, 1)]
    rep.emit(args.format)
    return 0


def _tgroup_common(args, lam_name: str | None, command: str) -> int:
    b = _bundle(args)
    rep = Report(b, command)
    if args.t is not None:
        if lam_name:
            reports = [is_twisted_tgroup(b.f, b.table[lam_name], args.t, b.name, lam_name)]
        else:
            reports = [is_unitary_tgroup(b.f, args.t, b.name)]
    else:
        reports = scan(b.f, b.table, lam_name, _config(args).t_cap, b.name)
    rep.data["reports"] = [r.to_dict() for r in reports]
    kind = f"{lam_name}-twisted unitary" if lam_name else "unitary"
    for r in reports:
        bad = r.first_violation
        why = f"; first violation {bad.irrep} {bad.label} with value {bad.value}" if bad else ""
        rep.lines.append(
            f"t={r.t}: {kind} {r.t}-group: {'yes' if r.verdict else 'no'}; "
            f"norm {r.criterion1.lhs} vs Haar {r.criterion1.rhs}{why}"
        )
    if args.t is None:
        rep.data["max_t"] = reports[-1].max_t
        rep.lines.append(f"max t = {reports[-1].max_t}")
    rep.emit(args.format)
    return 0 if args.t is None or reports[0].verdict else EXIT_FAILED


def cmd_tgroup(args) -> int:
    return _tgroup_common(args, None, "tgroup")


def cmd_twisted(args) -> int:
    return _tgroup_common(args, args.lam, "twisted")


def cmd_multiplicities(args) -> int:
    b = _bundle(args)
    lam, f = b.table[args.lam], b.f
    values = {n: multiplicity(lam, f**n) for n in parse_range(args.n)}
    rep = Report(b, "multiplicities")
    rep.data.update(lam=args.lam, multiplicities={str(n): m for n, m in values.items()})
    rep.lines += [f"n={n}: {m}" for n, m in values.items() if m or args.all]
    rep.emit(args.format)
    return 0


def cmd_branch(args) -> int:
    b = _bundle(args)
    q = b.group.degree
    if args.irrep:
        irreps = [parse_irrep(x, q) for x in args.irrep]
    elif args.t is not None:
        irreps = [r for r, _ in decompose_FFstar_power(q, args.t)]
    elif q == 2:
        irreps = [UIrrep.from_weight((k, -k)) for k in range(11)]
    else:
        irreps = [r for r, _ in decompose_FFstar_power(q, 4)]
    rep = Report(b, "branch")
    rows = []
    for r in irreps:
        parts = branch(r, b.group, b.table)
        rows.append({"R": r.display_name, "weight": r.label, "dimension": r.dimension,
                     "restriction": {n: m for n, m in parts}})
        body = " + ".join(n if m == 1 else f"({m}){n}" for n, m in parts)
        rep.lines.append(f"{r.display_name:>6} {r.label:>12}  ->  {body}")
    rep.data["rows"] = rows
    rep.emit(args.format)
    return 0


def _code(args, b: GroupBundle):
    return build_code(b, args.lam, args.n, seed=_config(args).seed, config=_config(args))


def cmd_build_code(args) -> int:
    b = _bundle(args)
    code = _code(args, b)
    rep = Report(b, "build-code")
    payload = code.to_dict()
    if args.output:
        Path(args.output).write_text(json.dumps(payload))
        rep.data["output"] = args.output
    rep.data.update({k: v for k, v in payload.items() if k != "isometry"})
    rep.lines.append(
        f"{code.n}-qudit (q={code.q}) code in {code.lambda_name}: isometry {code.isometry.shape[0]}x"
        f"{code.isometry.shape[1]}, Hom dimension {code.hom_dimension} (moduli CP^{code.hom_dimension - 1}), "
        f"seed {code.seed}, Galois twist k={code.twist_k}"
    )
    if args.output:
        rep.lines.append(f"wrote {args.output}")
    rep.emit(args.format)
    return 0


def cmd_verify(args) -> int:
    cfg = _config(args)
    b = _bundle(args)
    code = _code(args, b)
    kl = kl_check(code, args.t, cfg.kl_tol)
    dist = measure_distance(code, min(max(args.t + 1, 1), cfg.distance_cap), cfg.kl_tol)
    tr = transversal_check(code)
    verdict = kl.verdict and tr.passed(cfg.equivariance_tol)
    rep = Report(b, "verify")
    rep.data.update(
        lam=args.lam, n=args.n, seed=code.seed, hom_dimension=code.hom_dimension, kl=kl.to_dict(args.entries),
        distance={"d": dist.d, "exact": dist.exact, "errors_checked": dist.errors_checked,
                  "witness": dist.witness.error.name if dist.witness else None},
        transversal={"max_deviation": tr.max_deviation,
                     "phase_only": [e.element for e in tr.entries if e.phase_only]},
        verdict="pass" if verdict else "fail",
    )
    rep.lines += [
        f"code: n={code.n}, q={code.q}, {code.lambda_name} (dim {code.logical_dim}), seed {code.seed}",
        f"KL up to weight {args.t}: {kl.errors_checked} errors, max residual {kl.max_residual:.2e} -> "
        f"{'pass' if kl.verdict else 'fail'}",
        f"distance: d = {dist}" + (f" (witness {dist.witness.error.name})" if dist.witness else ""),
        f"transversal: max deviation {tr.max_deviation:.2e}",
        f"verdict: {'pass' if verdict else 'fail'}",
    ]
    rep.emit(args.format)
    return 0 if verdict else EXIT_FAILED


def cmd_reproduce(args) -> int:
    from .reproduce import run_all

    numbers = parse_range(args.only) if args.only else None
    results = run_all(numbers, _config(args))
    if args.format == "json":
        print(json.dumps({"schema_version": "1", "criteria": [r.to_dict() for r in results],
                          "all_passed": all(r.passed for r in results)}, indent=2))
    else:
        for r in results:
            print(r.line())
        print(f"{sum(r.passed for r in results)}/{len(results)} criteria passed")
    return 0 if all(r.passed for r in results) else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=None, help="probe seed (default 0)")
    common.add_argument("--dim-cap", type=int, default=None, help="largest q^n (default 2048, at most 4096)")
    common.add_argument("--kl-tol", type=float, default=None, help="Knill-Laflamme tolerance (default 1e-7)")

    grp = argparse.ArgumentParser(add_help=False)
    grp.add_argument("--group", default="2I", help="bundled name (2I, sigma360) or a group file")
    grp.add_argument("--table", default=None, help="character table file (overrides the group file's)")

    lam = argparse.ArgumentParser(add_help=False)
    lam.add_argument("--lambda", dest="lam", default="chi3", help="irrep name from the table")

    p = argparse.ArgumentParser(prog="twistcode", description="Twisted unitary t-groups and the codes they give.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("classes", parents=[common, grp], help="conjugacy classes")
    s.set_defaults(func=cmd_classes)
    s = sub.add_parser("norms", parents=[common, grp, lam], help="||lambda f^k|| for k = 1..t")
    s.add_argument("--t", type=int, default=3)
    s.set_defaults(func=cmd_norms)
    s = sub.add_parser("tgroup", parents=[common, grp], help="unitary t-group test (scans when --t is omitted)")
    s.add_argument("--t", type=int, default=None)
    s.set_defaults(func=cmd_tgroup)
    s = sub.add_parser("twisted", parents=[common, grp, lam], help="lambda-twisted unitary t-group test")
    s.add_argument("--t", type=int, default=None)
    s.set_defaults(func=cmd_twisted)
    s = sub.add_parser("multiplicities", parents=[common, grp, lam], help="<lambda, f^n> over a range of n")
    s.add_argument("--n", default="1..21")
    s.add_argument("--all", action="store_true", help="also print zero multiplicities")
    s.set_defaults(func=cmd_multiplicities)
    s = sub.add_parser("branch", parents=[common, grp], help="restrict U(q) irreps to the group")
    s.add_argument("--t", type=int, default=None, help="branch every member of E_t")
    s.add_argument("--irrep", action="append", help="weight such as [2,0,-2]; repeatable")
    s.set_defaults(func=cmd_branch)
    s = sub.add_parser("build-code", parents=[common, grp, lam], help="construct a code isometry")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--output", help="write the code as JSON")
    s.set_defaults(func=cmd_build_code)
    s = sub.add_parser("verify", parents=[common, grp, lam], help="Knill-Laflamme, distance and transversality")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--t", type=int, default=1, help="check all errors up to this weight")
    s.add_argument("--entries", action="store_true", help="include every error in JSON output")
    s.set_defaults(func=cmd_verify)
    s = sub.add_parser("reproduce-paper", parents=[common], help="run the acceptance criteria")
    s.add_argument("--only", help="criterion numbers, e.g. 1..8 or 9,10")
    s.set_defaults(func=cmd_reproduce)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TwistcodeError as exc:
        print(f"twistcode: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except KeyError as exc:
        print(f"twistcode: error: {exc.args[0]}", file=sys.stderr)
        return ValidationError.exit_code


if __name__ == "__main__":
    sys.exit(main())
