"""Command-line entry point: ``wydkit {verify,sweep,case,kernel}``.

Exit status is 0 when every check passes, 1 when a violation is found and
2 on input or configuration errors.
"""

import argparse
import json
import sys

from .errors import InputError
from .harness import (InstanceSpec, RunConfig, case_report, parse_grid,
                      run_sweep, run_verify, sweep_csv)
from .tolerances import Tolerances
from .uncertainty import kernel


def _floats(text):
    try:
        return [float(s) for s in text.split(",") if s.strip()]
    except ValueError as exc:
        raise InputError(f"expected comma-separated numbers, got {text!r}") from exc


def _tolerances(args):
    return Tolerances.from_env(q=getattr(args, "tol_q", None), orc=getattr(args, "tol_orc", None))


def _write(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_verify(args):
    cfg = RunConfig(seed=args.seed, trials=args.trials, max_dim=args.max_dim,
                    max_blocks=args.max_blocks, betas=tuple(_floats(args.betas)),
                    tol=_tolerances(args), out=args.out)
    result = run_verify(cfg)
    print(json.dumps(result.summary, sort_keys=True))
    return result.exit_code


def cmd_sweep(args):
    tol = _tolerances(args)
    inst = InstanceSpec.load(args.instance, tol)
    rows, findings = run_sweep(inst, parse_grid(args.beta_grid), tol)
    _write(sweep_csv(rows, findings), args.out)
    return 0 if findings.monotone and findings.symmetric else 1


def cmd_case(args):
    tol = _tolerances(args)
    inst = InstanceSpec.load(args.instance, tol)
    beta = parse_grid(str(args.beta))[0]
    doc = case_report(inst, beta, tol, dump=args.dump_measures)
    print(json.dumps(doc, indent=1))
    return 0 if doc["passed"] else 1


def cmd_kernel(args):
    lams = _floats(args.lambdas)
    if len(lams) != 4:
        raise InputError("--lambdas needs exactly four values")
    value = kernel(*lams, args.beta)
    print(repr(value))
    return 0 if value >= 0 else 1


def build_parser():
    p = argparse.ArgumentParser(prog="wydkit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def tol_flags(sp):
        sp.add_argument("--tol-q", type=float, default=None)
        sp.add_argument("--tol-orc", type=float, default=None)

    v = sub.add_parser("verify", help="batch-verify random instances")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--max-dim", type=int, default=8)
    v.add_argument("--max-blocks", type=int, default=3)
    v.add_argument("--betas", default="0.1,0.25,0.5,0.75,0.9")
    v.add_argument("--out", default=None)
    tol_flags(v)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="gap as a function of beta for one instance")
    s.add_argument("--instance", required=True)
    s.add_argument("--beta-grid", default="0.5:0.95:0.05")
    s.add_argument("--out", default=None)
    tol_flags(s)
    s.set_defaults(func=cmd_sweep)

    c = sub.add_parser("case", help="full report for one instance")
    c.add_argument("--instance", required=True)
    c.add_argument("--beta", type=float, required=True)
    c.add_argument("--dump-measures", action="store_true")
    tol_flags(c)
    c.set_defaults(func=cmd_case)

    k = sub.add_parser("kernel", help="evaluate the gap kernel at one point")
    k.add_argument("--lambdas", required=True)
    k.add_argument("--beta", type=float, required=True)
    k.set_defaults(func=cmd_kernel)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
