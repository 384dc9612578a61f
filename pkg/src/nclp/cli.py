"""Command-line front end: divergence, lp-norm, tensor, suite.

Exit codes: 0 success (infinite divergences included), 1 malformed input or
usage, 2 precondition violation, 3 conditioning failure, 4 suite trials
failed.  The kernel cutoff resolves flag > NCLP_EPS_REL env > default.
"""

from __future__ import annotations

import argparse
import sys

from . import io
from .config import default_eps_rel
from .divergence import DivergenceParams, d_tilde, q_tilde_alpha, \
    q_tilde_alpha_z
from .errors import (ConditioningError, DomainError, FileFormatError,
                     NclpError, ShapeError, UsageError)
from .lp import KosakiSpec, LpExponent, kosaki_norm, lp_norm
from .reports import format_float
from .suites import (SUITE_NAMES, SuiteConfig, format_profile, parse_dims,
                     run_suite, summarize)
from .tensor import TensorAlgebra, kron_element

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PRECONDITION = 2
EXIT_CONDITIONING = 3
EXIT_SUITE_FAILED = 4


class _Parser(argparse.ArgumentParser):
    """argparse variant that reports usage problems as exit code 1."""

    def error(self, message):
        raise UsageError(f"{message}\n{self.format_usage()}")


def _build_parser() -> _Parser:
    parser = _Parser(prog="nclp", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_div = sub.add_parser("divergence", help="Renyi divergence of two "
                           "functional files")
    p_div.add_argument("--kind", choices=("sandwiched", "alpha-z"),
                       required=True)
    p_div.add_argument("--alpha", type=float, required=True)
    p_div.add_argument("--z", type=float, default=None)
    p_div.add_argument("--psi", required=True, metavar="FILE")
    p_div.add_argument("--phi", required=True, metavar="FILE")
    p_div.add_argument("--json", action="store_true",
                       help="emit a run report instead of plain lines")
    p_div.add_argument("--eps-rel", type=float, default=None)

    p_norm = sub.add_parser("lp-norm", help="Schatten or interpolated norm "
                            "of a matrix file")
    p_norm.add_argument("--p", required=True, help="exponent; 'inf' allowed")
    p_norm.add_argument("--x", required=True, metavar="FILE")
    p_norm.add_argument("--kosaki", action="store_true")
    p_norm.add_argument("--phi", metavar="FILE")
    p_norm.add_argument("--eta", type=float, default=0.0)
    p_norm.add_argument("--eps-rel", type=float, default=None)

    p_tensor = sub.add_parser("tensor", help="Kronecker product of two "
                              "matrix files")
    p_tensor.add_argument("--left", required=True, metavar="FILE")
    p_tensor.add_argument("--right", required=True, metavar="FILE")
    p_tensor.add_argument("-o", "--out", required=True, metavar="FILE")

    p_suite = sub.add_parser("suite", help="run a named property suite")
    p_suite.add_argument("--name", required=True)
    p_suite.add_argument("--trials", type=int, default=50)
    p_suite.add_argument("--seed", type=int, default=0)
    p_suite.add_argument("--dims", default=None,
                         help="profiles like 2x2,3x2 or 2,3 (suite default "
                         "otherwise)")
    p_suite.add_argument("--tol-override", action="append", default=[],
                         metavar="KEY=VALUE")
    p_suite.add_argument("--out", default=None, metavar="FILE")
    p_suite.add_argument("--eps-rel", type=float, default=None)
    return parser


def _eps(args) -> float:
    return default_eps_rel() if args.eps_rel is None else float(args.eps_rel)


def _cmd_divergence(args) -> int:
    eps = _eps(args)
    if args.kind == "sandwiched":
        if args.z is not None:
            raise UsageError("--z applies only to --kind alpha-z")
        params = DivergenceParams(args.alpha)
    else:
        z = args.alpha if args.z is None else args.z
        params = DivergenceParams(args.alpha, z=z)
    psi = io.load_functional(args.psi, eps)
    phi = io.load_functional(args.phi, eps)
    if psi.algebra != phi.algebra:
        raise ShapeError("psi and phi files live on different algebras")
    if params.is_sandwiched:
        q = q_tilde_alpha(psi, phi, params.alpha, eps)
    else:
        q = q_tilde_alpha_z(psi, phi, params, eps)
    d = d_tilde(psi, phi, params, eps)
    if args.json:
        doc = io.build_run_report(
            config={"command": "divergence", "kind": args.kind,
                    "alpha": args.alpha, "z": params.effective_z,
                    "eps_rel": eps, "psi": args.psi, "phi": args.phi},
            results={"Q": {"value": q.value, "reason": q.reason.value},
                     "D": {"value": d.value, "reason": d.reason.value}},
            residuals={}, status="ok")
        sys.stdout.write(io.dumps_report(doc))
    else:
        print(f"Q={q}")
        print(f"D={d}")
    return EXIT_OK


def _cmd_lp_norm(args) -> int:
    eps = _eps(args)
    p = LpExponent.parse(args.p)
    x = io.load_element(args.x)
    if args.kosaki:
        if not args.phi:
            raise UsageError("--kosaki requires --phi FILE")
        phi = io.load_functional(args.phi, eps)
        spec = KosakiSpec(phi, p, args.eta)
        value = kosaki_norm(x, spec, eps)
    else:
        value = lp_norm(x, p)
    print(f"norm={format_float(value)}")
    return EXIT_OK


def _cmd_tensor(args) -> int:
    left = io.load_matrix_file(args.left)
    right = io.load_matrix_file(args.right)
    T = TensorAlgebra(left.algebra, right.algebra)
    product = kron_element(T, left.element, right.element)
    kind = "functional" if (left.kind == "functional"
                            and right.kind == "functional") else "element"
    io.save_matrix_file(args.out, product, kind)
    print(f"wrote {args.out} kind={kind} "
          f"blocks={list(product.algebra.block_dims)}")
    return EXIT_OK


def _parse_overrides(pairs) -> dict:
    out = {}
    for pair in pairs:
        if "=" not in pair:
            raise UsageError(f"bad --tol-override {pair!r}, expected KEY=VALUE")
        key, _, value = pair.partition("=")
        try:
            out[key.strip()] = float(value)
        except ValueError as exc:
            raise UsageError(f"bad tolerance value in {pair!r}") from exc
    return out


def _cmd_suite(args) -> int:
    eps = _eps(args)
    dims = parse_dims(args.dims) if args.dims else ()
    config = SuiteConfig(
        suite_name=args.name, trials=args.trials, seed=args.seed,
        dims=dims, tolerances=_parse_overrides(args.tol_override),
        eps_rel=eps)
    reports = run_suite(config)
    summary = summarize(reports)
    doc = io.build_run_report(
        config={"command": "suite", "suite": config.suite_name,
                "trials": config.trials, "seed": config.seed,
                "dims": [format_profile(p) for p in
                         (config.dims or ())] or "default",
                "tolerance_overrides": config.tolerances,
                "eps_rel": eps},
        results=[r.to_dict() for r in reports],
        residuals={}, status=summary["status"])
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(io.dumps_report(doc))
        print(f"suite={config.suite_name} trials={summary['trials']} "
              f"failures={summary['failures']} status={summary['status']} "
              f"report={args.out}")
    else:
        sys.stdout.write(io.dumps_report(doc))
    return EXIT_OK if summary["failures"] == 0 else EXIT_SUITE_FAILED


_COMMANDS = {
    "divergence": _cmd_divergence,
    "lp-norm": _cmd_lp_norm,
    "tensor": _cmd_tensor,
    "suite": _cmd_suite,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except (UsageError, FileFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, ShapeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ConditioningError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONDITIONING
    except NclpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
