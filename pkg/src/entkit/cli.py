"""Command-line front end: generate states, run the separability pipeline,
drive the distillation recurrence, work with witnesses, and estimate
measures. Reports are plain text with one KEY=VALUE line per quantity.

Exit codes are a stable contract:
  0 separable / success / detection     1 entangled / no detection / target missed
  2 undecided                           3 non-improving distillation regime
  4 witness construction on a PPT state
  64 malformed input file
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import distill, io, measures, separability, states, witness

EXIT_OK = 0
EXIT_ENTANGLED = 1
EXIT_NO_DETECTION = 1
EXIT_TARGET_MISSED = 1
EXIT_UNDECIDED = 2
EXIT_NON_IMPROVING = 3
EXIT_PPT_BUILD = 4
EXIT_USAGE = 2
EXIT_MALFORMED = 64


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _bool(x) -> str:
    return "true" if x else "false"


def _parse_dims(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise SystemExit(f"error: bad dims {text!r}; expected e.g. 2,2") from None
    if not dims:
        raise SystemExit("error: empty dims")
    return dims


def cmd_gen(args) -> int:
    family = args.family
    provenance = None
    seed = None
    if family == "bell":
        psi = states.bell(args.kind or "phi+")
        print(f"FAMILY=bell KIND={args.kind or 'phi+'}")
        io.save_pure(psi, args.out)
    elif family in ("werner", "isotropic"):
        d = 2 if family == "werner" else args.d
        rho = states.isotropic(args.p, d)
        print(f"FAMILY={family}")
        print(f"P={_fmt(args.p)}")
        print(f"D={d}")
        io.save_density(rho, args.out, provenance=f"{family} p={_fmt(args.p)} d={d}")
    elif family == "ghz":
        print("FAMILY=ghz")
        io.save_pure(states.ghz(), args.out)
    elif family == "w":
        print("FAMILY=w")
        io.save_pure(states.w_state(), args.out)
    elif family == "symasym":
        rho = states.sym_antisym_family(args.n, args.alpha)
        print("FAMILY=symasym")
        print(f"N={args.n}")
        print(f"ALPHA={_fmt(args.alpha)}")
        provenance = f"symasym n={args.n} alpha={_fmt(args.alpha)} (alpha is the symmetric-subspace weight)"
        io.save_density(rho, args.out, provenance=provenance)
    elif family == "random":
        if args.seed is None:
            raise SystemExit("error: gen random requires --seed")
        dims = _parse_dims(args.dims)
        rank = args.rank if args.rank is not None else int(np.prod(dims))
        rho = states.random_density(dims, rank, args.seed)
        seed = args.seed
        print("FAMILY=random")
        print(f"DIMS={','.join(str(d) for d in dims)}")
        print(f"RANK={rank}")
        print(f"SEED={seed}")
        io.save_density(rho, args.out, provenance=f"random rank={rank}", seed=seed)
    else:
        raise SystemExit(f"error: unknown family {family!r}")
    print(f"OUT={args.out}")
    return EXIT_OK


def _load_or_exit(path):
    try:
        return io.load(path)
    except (io.StateFileError, OSError) as exc:
        print(f"ERROR=load-failed DETAIL={exc}", file=sys.stderr)
        raise SystemExit(EXIT_MALFORMED) from exc


def _as_density(obj) -> states.DensityMatrix:
    if isinstance(obj, states.PureState):
        return obj.to_density()
    if isinstance(obj, states.DensityMatrix):
        return obj
    print("ERROR=expected-state DETAIL=file holds a witness operator", file=sys.stderr)
    raise SystemExit(EXIT_MALFORMED)


def cmd_analyze(args) -> int:
    rho = _as_density(_load_or_exit(args.state))
    try:
        verdict = separability.analyze(rho)
    except ValueError as exc:
        print(f"ERROR=analyze-failed DETAIL={exc}", file=sys.stderr)
        raise SystemExit(EXIT_MALFORMED) from exc
    for rep in verdict.basis:
        key = rep.criterion.upper()
        print(f"{key}_SATISFIED={_bool(rep.satisfied)}")
        print(f"{key}_MARGIN={_fmt(rep.margin)}")
        if rep.boundary:
            print(f"{key}_BOUNDARY=true")
    print(f"VERDICT={verdict.status}")
    return {
        separability.SEPARABLE: EXIT_OK,
        separability.ENTANGLED: EXIT_ENTANGLED,
        separability.UNDECIDED: EXIT_UNDECIDED,
    }[verdict.status]


def cmd_distill(args) -> int:
    if (args.state is None) == (args.fidelity is None):
        raise SystemExit("error: provide exactly one of STATE or --fidelity")
    if args.fidelity is not None:
        f0 = args.fidelity
    else:
        rho = _as_density(_load_or_exit(args.state))
        try:
            f0 = distill.twirl_to_isotropic(rho).fidelity
        except ValueError as exc:
            print(f"ERROR=twirl-failed DETAIL={exc}", file=sys.stderr)
            raise SystemExit(EXIT_MALFORMED) from exc
        print(f"TWIRLED_FIDELITY={_fmt(f0)}")
    try:
        trace = distill.iterate(f0, args.target, args.max_steps, retwirl=not args.no_retwirl)
    except distill.NonImprovingError as exc:
        print(f"ERROR=non-improving DETAIL={exc}", file=sys.stderr)
        return EXIT_NON_IMPROVING
    except ValueError as exc:
        raise SystemExit(f"error: {exc}") from exc
    print("STEP F F_NEXT SUCCESS_PROB")
    for k, step in enumerate(trace.steps, start=1):
        print(
            f"{k} {_fmt(step.fidelity_before)} {_fmt(step.fidelity_after)} "
            f"{_fmt(step.success_probability)}"
        )
    final = trace.final_fidelity if trace.steps else f0
    print(f"FINAL_FIDELITY={_fmt(final)}")
    print(f"STEPS={len(trace.steps)}")
    print(f"PAIRS_ESTIMATE={_fmt(trace.pairs_consumed_estimate)}")
    reached = final >= args.target
    print(f"TARGET_REACHED={_bool(reached)}")
    return EXIT_OK if reached else EXIT_TARGET_MISSED


def cmd_witness(args) -> int:
    sub = args.witness_cmd
    if sub == "build":
        rho = _as_density(_load_or_exit(args.state))
        try:
            w = witness.construct_from_npt(rho)
        except witness.PPTInputError as exc:
            print(f"ERROR=ppt-input DETAIL={exc}", file=sys.stderr)
            return EXIT_PPT_BUILD
        io.save_witness(w, args.out)
        print(f"KIND={w.kind}")
        print(f"DETECTION_VALUE={_fmt(witness.evaluate(w, rho))}")
        print(f"OUT={args.out}")
        return EXIT_OK
    if sub == "eval":
        w = _load_or_exit(args.witness_file)
        if not isinstance(w, witness.WitnessOperator):
            print("ERROR=expected-witness DETAIL=first argument must be a witness file", file=sys.stderr)
            raise SystemExit(EXIT_MALFORMED)
        rho = _as_density(_load_or_exit(args.state))
        try:
            val = witness.evaluate(w, rho)
        except ValueError as exc:
            print(f"ERROR=eval-failed DETAIL={exc}", file=sys.stderr)
            raise SystemExit(EXIT_MALFORMED) from exc
        print(f"KIND={w.kind}")
        print(f"VALUE={_fmt(val)}")
        detected = val < 0.0
        print(f"DETECTED={_bool(detected)}")
        k = witness.parse_schmidt_kind(w.kind)
        if k is not None and detected:
            print(f"SCHMIDT_NUMBER_AT_LEAST={k}")
        return EXIT_OK if detected else EXIT_NO_DETECTION
    if sub == "optimize":
        if args.seed is None:
            raise SystemExit("error: witness optimize requires --seed")
        w = _load_or_exit(args.witness_file)
        if not isinstance(w, witness.WitnessOperator):
            print("ERROR=expected-witness DETAIL=first argument must be a witness file", file=sys.stderr)
            raise SystemExit(EXIT_MALFORMED)
        m, _ = witness.min_product_expectation(w, args.restarts, args.seed)
        shifted = witness.shift_optimize(w, args.restarts, args.seed)
        io.save_witness(shifted, args.out, seed=args.seed)
        print(f"SHIFT={_fmt(m)}")
        print(f"RESTARTS={args.restarts}")
        print(f"SEED={args.seed}")
        print(f"OUT={args.out}")
        return EXIT_OK
    if sub == "classify3":
        rho = _as_density(_load_or_exit(args.state))
        try:
            ev = witness.classify_tripartite(rho)
        except ValueError as exc:
            print(f"ERROR=classify-failed DETAIL={exc}", file=sys.stderr)
            raise SystemExit(EXIT_MALFORMED) from exc
        print(f"GHZ_WITNESS_VALUE={_fmt(ev.ghz_value)}")
        print(f"W_WITNESS_VALUE={_fmt(ev.w_value)}")
        print(f"GENUINELY_TRIPARTITE={_bool(ev.genuinely_tripartite)}")
        print(f"IN_GHZ_MINUS_W={_bool(ev.in_ghz_minus_w)}")
        return EXIT_OK
    raise SystemExit(f"error: unknown witness subcommand {sub!r}")


def cmd_measure(args) -> int:
    obj = _load_or_exit(args.state)
    kind = args.kind
    if kind == "entropy":
        if isinstance(obj, states.PureState):
            if len(obj.dims) != 2:
                print("ERROR=measure-failed DETAIL=bipartite pure state required", file=sys.stderr)
                raise SystemExit(EXIT_MALFORMED)
            est = measures.pure_entanglement(obj)
            print("KIND=entropy-pure")
            print(f"VALUE_EBITS={_fmt(est.value)}")
            print("UPPER_BOUND=false")
        else:
            rho = _as_density(obj)
            print("KIND=entropy")
            print(f"VALUE_EBITS={_fmt(measures.von_neumann_entropy(rho))}")
            print("UPPER_BOUND=false")
        return EXIT_OK
    if args.seed is None:
        raise SystemExit(f"error: measure --kind {kind} requires --seed")
    rho = _as_density(obj)
    try:
        if kind == "formation":
            est = measures.entanglement_of_formation(
                rho, ensemble_size=args.ensemble_size, restarts=args.restarts, seed=args.seed
            )
        else:
            est = measures.relative_entropy_estimate(
                rho, mixture_size=args.mixture_size, restarts=args.restarts, seed=args.seed
            )
    except ValueError as exc:
        print(f"ERROR=measure-failed DETAIL={exc}", file=sys.stderr)
        raise SystemExit(EXIT_MALFORMED) from exc
    print(f"KIND={est.kind}")
    print(f"VALUE_EBITS={_fmt(est.value)}")
    print("UPPER_BOUND=true")
    print(f"RESTARTS={est.optimizer_stats.restarts}")
    print(f"EVALUATIONS={est.optimizer_stats.evaluations}")
    print(f"SEED={args.seed}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entkit",
        description="Decide, certify, distill, and quantify entanglement of small density matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a named or random state file")
    gen.add_argument("family", choices=["bell", "werner", "isotropic", "ghz", "w", "symasym", "random"])
    gen.add_argument("--out", required=True)
    gen.add_argument("--kind", help="bell kind: phi+ phi- psi+ psi-")
    gen.add_argument("--p", type=float, default=0.5, help="mixing parameter")
    gen.add_argument("--d", type=int, default=2, help="local dimension (isotropic)")
    gen.add_argument("--n", type=int, default=3, help="local dimension (symasym)")
    gen.add_argument("--alpha", type=float, default=0.5, help="symmetric weight (symasym)")
    gen.add_argument("--dims", default="2,2", help="comma-separated dims (random)")
    gen.add_argument("--rank", type=int, help="rank (random); default full")
    gen.add_argument("--seed", type=int, help="seed (required for random)")
    gen.set_defaults(func=cmd_gen)

    an = sub.add_parser("analyze", help="run the separability criteria on a state file")
    an.add_argument("state")
    an.set_defaults(func=cmd_analyze)

    di = sub.add_parser("distill", help="iterate the two-pair recurrence")
    di.add_argument("state", nargs="?", help="two-qubit state file (twirled to isotropic first)")
    di.add_argument("--fidelity", type=float, help="start from a bare fidelity instead of a file")
    di.add_argument("--target", type=float, default=0.99)
    di.add_argument("--max-steps", type=int, default=50)
    di.add_argument("--no-retwirl", action="store_true", help="iterate the raw state (exploratory)")
    di.set_defaults(func=cmd_distill)

    wi = sub.add_parser("witness", help="build/evaluate/optimize witnesses, classify 3-qubit states")
    wsub = wi.add_subparsers(dest="witness_cmd", required=True)
    wb = wsub.add_parser("build", help="canonical witness from an NPT state")
    wb.add_argument("state")
    wb.add_argument("--out", required=True)
    we = wsub.add_parser("eval", help="evaluate a witness file on a state file")
    we.add_argument("witness_file")
    we.add_argument("state")
    wo = wsub.add_parser("optimize", help="parallel-shift a witness toward tangency")
    wo.add_argument("witness_file")
    wo.add_argument("--out", required=True)
    wo.add_argument("--restarts", type=int, default=50)
    wo.add_argument("--seed", type=int)
    wc = wsub.add_parser("classify3", help="GHZ/W one-sided classification of a 3-qubit state")
    wc.add_argument("state")
    wi.set_defaults(func=cmd_witness)

    me = sub.add_parser("measure", help="entropy / formation / relative-entropy estimates")
    me.add_argument("state")
    me.add_argument("--kind", choices=["entropy", "formation", "relent"], required=True)
    me.add_argument("--restarts", type=int, default=8)
    me.add_argument("--seed", type=int)
    me.add_argument("--ensemble-size", type=int)
    me.add_argument("--mixture-size", type=int)
    me.set_defaults(func=cmd_measure)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
