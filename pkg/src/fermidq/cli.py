"""Command line interface.

    fermidq scenario nac --hbar 1 --omega 1 --c 0.2 --d 0.2 --out report.json
    fermidq sweep --link c=d --from -0.9 --to 0.9 --steps 181 \
                  --quantities ep_pp,ep_pm --out sweep.csv
    fermidq eval --expr "-i*omega*th1*th3 - i*omega*th2*th4" [--star]
    fermidq verify [--grid coarse|fine]

Exit codes: 0 success, 1 verification failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import AlgebraError
from .expr import ExpressionError, ParseError, evaluate, parse_expression, pretty_print
from .scenario import (
    ConfigError,
    ScenarioConfig,
    ScenarioError,
    SweepSpec,
    phase_space_algebra,
    reduced_theta_algebra,
    report_to_json,
    run_scenario,
    run_sweep,
    write_sweep_csv,
)

USAGE_ERROR = 2
VERIFY_ERROR = 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fermidq",
        description="Deformation quantization of two fermionic oscillators "
        "on a non-anticommutative phase space.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    scen = sub.add_parser("scenario", help="run a scenario preset and emit JSON")
    scen.add_argument("preset", choices=["nac"], help="scenario preset")
    _add_config_arguments(scen)
    scen.add_argument("--renyi-alpha", type=float, default=None)
    scen.add_argument("--out", default=None, help="path for the JSON report")

    sweep = sub.add_parser("sweep", help="parameter sweep, CSV output")
    _add_config_arguments(sweep)
    sweep.add_argument("--param", choices=["c", "d"], default="c")
    sweep.add_argument("--link", choices=["c=d", "c=-d", "none"], default="c=d")
    sweep.add_argument("--from", dest="start", type=float, default=-0.9)
    sweep.add_argument("--to", dest="stop", type=float, default=0.9)
    sweep.add_argument("--steps", type=int, default=181)
    sweep.add_argument(
        "--quantities",
        default="ep_pp,ep_pm",
        help="comma-separated subset of ep_pp, ep_pm, energies, p1, p2",
    )
    sweep.add_argument("--out", default=None, help="path for the CSV file")

    ev = sub.add_parser("eval", help="evaluate a Grassmann expression")
    ev.add_argument("--expr", required=True)
    ev.add_argument(
        "--star",
        action="store_true",
        help="interpret '*' as the deformed star product on the theta sector",
    )
    _add_config_arguments(ev)
    ev.add_argument("--C", dest="big_c", type=float, default=None,
                    help="bracket coupling parameter (defaults to 4c/hbar)")
    ev.add_argument("--json", action="store_true", help="emit terms as JSON")

    ver = sub.add_parser("verify", help="run the verification suite")
    ver.add_argument("--grid", choices=["coarse", "fine"], default="fine")
    ver.add_argument("--out", default=None, help="optional JSON result file")
    ver.add_argument(
        "--debug-perturb-hodge",
        action="store_true",
        help="negative control: flip the Hodge sign and expect trace failures",
    )
    return parser


def _add_config_arguments(parser: argparse.ArgumentParser):
    parser.add_argument("--hbar", type=float, default=None)
    parser.add_argument("--omega", type=float, default=None)
    parser.add_argument("--c", type=float, default=None)
    parser.add_argument("--d", type=float, default=None)
    parser.add_argument("--config", default=None, help="JSON or key=value file")


def _config_from_args(args) -> ScenarioConfig:
    if args.config:
        cfg = ScenarioConfig.from_file(args.config)
    else:
        cfg = ScenarioConfig()
    overrides = {}
    for key in ("hbar", "omega", "c", "d"):
        value = getattr(args, key, None)
        if value is not None:
            overrides[key] = value
    if getattr(args, "renyi_alpha", None) is not None:
        overrides["renyi_alpha"] = args.renyi_alpha
    if getattr(args, "out", None) is not None:
        overrides["out"] = args.out
    return cfg.replace(**overrides) if overrides else cfg


def _cmd_scenario(args) -> int:
    cfg = _config_from_args(args)
    report = run_scenario(cfg)
    text = report_to_json(report)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        print(f"wrote {cfg.out}")
    else:
        print(text)
    return 0


def _cmd_sweep(args) -> int:
    cfg = _config_from_args(args)
    quantities = tuple(q.strip() for q in args.quantities.split(",") if q.strip())
    spec = SweepSpec(
        parameter=args.param,
        link=None if args.link == "none" else args.link,
        start=args.start,
        stop=args.stop,
        steps=args.steps,
        quantities=quantities,
    )
    rows = run_sweep(spec, cfg)
    if cfg.out:
        write_sweep_csv(rows, spec, cfg.out)
        print(f"wrote {cfg.out} ({len(rows)} rows)")
    else:
        cols = spec.columns()
        print(",".join(cols))
        for row in rows:
            print(",".join(f"{row.get(col):.12g}" if row.get(col) is not None else ""
                           for col in cols))
    return 0


def _cmd_eval(args) -> int:
    cfg = _config_from_args(args)
    params = {
        "hbar": cfg.hbar,
        "omega": cfg.omega,
        "c": cfg.c,
        "d": cfg.d,
        "C": args.big_c if args.big_c is not None else 4.0 * cfg.c / cfg.hbar,
    }
    ast = parse_expression(args.expr)
    if args.star:
        from .expr import Generator, Group, Negate, Product, Sum
        from .star import build_star_product, nac_form, star

        algebra = reduced_theta_algebra()
        product = build_star_product(nac_form(algebra, cfg.hbar, cfg.c, cfg.d))

        def eval_star(node):
            if isinstance(node, Sum):
                out = algebra.zero()
                for sign, term in node.terms:
                    out = out + sign * eval_star(term)
                return out
            if isinstance(node, Product):
                out = algebra.one()
                for factor in node.factors:
                    out = star(out, eval_star(factor), product)
                return out
            if isinstance(node, Negate):
                return -eval_star(node.operand)
            if isinstance(node, Group):
                return eval_star(node.inner)
            return evaluate(node, algebra, params)

        element = eval_star(ast)
    else:
        algebra = phase_space_algebra()
        element = evaluate(ast, algebra, params)
    if args.json:
        rows = [
            [list(algebra.monomial_labels(m)), coeff.real, coeff.imag]
            for m, coeff in sorted(
                element.terms().items(), key=lambda kv: (kv[0].bit_count(), kv[0])
            )
        ]
        print(json.dumps(rows))
    else:
        print(element)
    return 0


def _cmd_verify(args) -> int:
    from .verification import perturbed_hodge_sign, run_all

    if args.debug_perturb_hodge:
        with perturbed_hodge_sign():
            results = run_all(args.grid)
    else:
        results = run_all(args.grid)
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        print(f"criterion {result.criterion:2d}: {status}  {result.name}")
        for sub in result.failures():
            print(f"    {sub.name}: {sub.detail}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump([r.to_dict() for r in results], fh, indent=2)
        print(f"wrote {args.out}")
    return 0 if all(r.passed for r in results) else VERIFY_ERROR


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "scenario": _cmd_scenario,
        "sweep": _cmd_sweep,
        "eval": _cmd_eval,
        "verify": _cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except (ConfigError, ParseError, ExpressionError, AlgebraError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
