"""Command-line interface; every subcommand writes CSV.

Exit status is 0 on success, 1 for domain or data errors and 2 for usage
errors.
"""

from __future__ import annotations

import argparse
import contextlib
import sys
from pathlib import Path

import numpy as np

from . import composition, discrete, figures, models
from . import hyperinflation as hi
from .tables import write_rows, write_table

MODEL_HEADER = ("t", "n", "ln_s", "p", "ln_p", "entropy_nats")

_KINDS = {"exp": models.Kind.EXPONENTIAL, "power": models.Kind.POWER,
          "dexp": models.Kind.DOUBLE_EXPONENTIAL}
_FIT_MODELS = {"exp": hi.EXPONENTIAL, "piecewise": hi.PIECEWISE,
               "dexp": hi.DOUBLE_EXPONENTIAL}
_SYNTH_PARAMS = {
    "exp": ("A", "lambda"),
    "piecewise": ("A", "lambda1", "lambda2", "t_b"),
    "dexp": ("c", "lambda", "t_ref"),
}


class UsageError(Exception):
    pass


def _floats(text, count=None, name="value"):
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"{name}: expected comma-separated numbers, got {text!r}")
    if count is not None and len(values) != count:
        raise argparse.ArgumentTypeError(f"{name}: expected {count} numbers, got {len(values)}")
    return values


def _float_list(text):
    return _floats(text, name="list")


def _pair(text):
    return tuple(_floats(text, 2, name="range"))


def _triple(text):
    return tuple(_floats(text, 3, name="grid"))


def _bool(text):
    if text.lower() in ("1", "true", "yes", "on"):
        return True
    if text.lower() in ("0", "false", "no", "off"):
        return False
    raise UsageError(f"not a boolean: {text!r}")


def parse_component(text: str) -> models.ExpansionSpec:
    """
    Parse ``kind:param=value:...``, e.g. ``dexp:a=1:lambda=0.1629:align=true``.

    Parameters are ``lambda``, ``a``, ``t0`` and ``align`` (shift so that
    p = 1 at t = 1).
    """
    kind, *pairs = text.strip().split(":")
    if kind not in _KINDS:
        raise UsageError(f"unknown kind {kind!r} in {text!r}; expected one of {sorted(_KINDS)}")
    fields = {}
    align = False
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep:
            raise UsageError(f"expected param=value, got {pair!r} in {text!r}")
        if key == "align":
            align = _bool(value)
            continue
        if key not in ("lambda", "a", "t0"):
            raise UsageError(f"unknown parameter {key!r} in {text!r}")
        try:
            fields["lam" if key == "lambda" else key] = float(value)
        except ValueError:
            raise UsageError(f"{key}: not a number: {value!r}") from None
    spec = models.ExpansionSpec(_KINDS[kind], **fields)
    return models.align_to_unit_time(spec) if align else spec


def parse_components(text: str) -> list[models.ExpansionSpec]:
    return [parse_component(part) for part in text.split(",") if part.strip()]


def _parse_which(text: str) -> list[int]:
    if text == "all":
        return list(figures.FIGURE_NUMBERS)
    numbers = []
    for part in text.split(","):
        lo, sep, hi_ = part.partition("..")
        try:
            numbers.extend(range(int(lo), int(hi_) + 1) if sep else [int(lo)])
        except ValueError:
            raise UsageError(f"bad figure selection {text!r}") from None
    bad = [k for k in numbers if k not in figures.FIGURE_NUMBERS]
    if bad or not numbers:
        raise UsageError(f"figures are numbered 1..9, got {text!r}")
    return sorted(set(numbers))


@contextlib.contextmanager
def _output(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            yield fh


def _grid(start, end, step):
    try:
        return figures.time_grid(start, end, step)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _cmd_model(args):
    fields = {"t0": args.t0}
    if args.kind in ("exp", "dexp"):
        if args.lam is None:
            raise UsageError(f"--lambda is required for --kind {args.kind}")
        fields["lam"] = args.lam
    if args.kind in ("power", "dexp"):
        if args.a is None:
            raise UsageError(f"--a is required for --kind {args.kind}")
        fields["a"] = args.a
    spec = models.ExpansionSpec(_KINDS[args.kind], **fields)
    if args.align_unit_time:
        spec = models.align_to_unit_time(spec)
    t = _grid(args.t_start, args.t_end, args.step)
    ln_s = models.log_sample_space(spec, t)
    with _output(args.out) as out:
        write_table(out, MODEL_HEADER, [
            t, models.doublings_at(spec, t), ln_s,
            models.probability(spec, t), models.log_probability(spec, t),
            models.entropy(spec, t),
        ])


def _cmd_compose(args):
    c = composition.compose(parse_components(args.spec))
    t = _grid(args.t_start, args.t_end, args.step)
    ln_p = composition.composite_log_probability(c, t)
    with _output(args.out) as out:
        write_table(out, MODEL_HEADER, [
            t, composition.composite_doublings(c, t),
            composition.composite_log_sample_space(c, t),
            np.exp(ln_p), ln_p, composition.composite_entropy(c, t),
        ])


def _cmd_simulate(args):
    state = discrete.DoublingState(args.n, args.s0)
    if state.n > discrete.MAX_EXACT_N:
        raise ValueError(f"n must be <= {discrete.MAX_EXACT_N} for the exact form")
    p = discrete.partition_probability(state)
    rows = [
        ("n", state.n),
        ("s0", state.s0),
        ("sample_space_size", state.size),
        ("partitions", state.partitions),
        ("partition_probability", p),
        ("partition_probability_real", float(p)),
    ]
    if state.n <= discrete.MAX_ENUMERATE_N:
        rows.append(("entropy_enumerated", discrete.enumerate_entropy(state)))
    rows.append(("entropy_closed_form", state.n * models.LN2))
    if args.draws is not None:
        est = discrete.monte_carlo_partition_probability(state, args.draws, args.seed)
        rows += [
            ("mc_frequency", est.frequency),
            ("mc_stderr", est.stderr),
            ("mc_hits", est.hits),
            ("mc_draws", est.draws),
            ("mc_seed", est.seed),
            ("mc_partition", est.partition),
            ("rng_algorithm", est.algorithm),
        ]
    with _output(args.out) as out:
        write_rows(out, ("quantity", "value"), rows)


def _cmd_fit(args):
    series = hi.load_series(args.input)
    if args.range is not None:
        series = series.window(*args.range)
    model = _FIT_MODELS[args.model]
    diagnostics = {}
    if model == hi.EXPONENTIAL:
        fit = hi.fit_exponential_segment(series)
    elif model == hi.DOUBLE_EXPONENTIAL:
        fit = hi.fit_double_exponential(series)
    else:
        if args.scan_breakpoints is not None:
            _, fit = hi.scan_breakpoint(series, args.scan_breakpoints)
        else:
            fit = hi.fit_piecewise(series, args.breakpoint)
        gap = hi.endpoint_discrepancy(fit, float(series.t[-1]))
        diagnostics = {f"endpoint_{k}": v for k, v in gap.items()}
    with _output(args.out) as out:
        hi.write_fit_report(fit, out, diagnostics)


def _cmd_synth(args):
    names = _SYNTH_PARAMS[args.model]
    values = args.params
    if args.model == "dexp" and len(values) == 2:
        values = values + [0.0]
    if len(values) != len(names):
        raise UsageError(f"--params for {args.model} takes {','.join(names)}")
    params = dict(zip(names, values))
    t = _grid(*args.grid)
    series = hi.synthesize_series(
        _FIT_MODELS[args.model], params, t, noise=args.noise, seed=args.seed
    )
    comment = (
        f"synthetic {args.model} series, params "
        + ",".join(f"{k}={v!r}" for k, v in params.items())
        + f", noise={args.noise!r}, seed={args.seed}"
    )
    with _output(args.out) as out:
        hi.write_dataset(series, out, comment=comment)


def _cmd_figures(args):
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    failed = []
    for number in _parse_which(args.which):
        fig = figures.figure(number)
        with open(out_dir / fig.filename, "w", newline="", encoding="utf-8") as fh:
            write_table(fh, list(fig.columns), list(fig.columns.values()))
        failed += figures.check_figure(number, fig.columns)
        print(out_dir / fig.filename)
    if failed:
        raise ValueError("; ".join(failed))


def _add_grid(p):
    p.add_argument("--t-start", type=float, required=True)
    p.add_argument("--t-end", type=float, required=True)
    p.add_argument("--step", type=float, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="expanding-space",
        description="Probability and entropy of an outcome in an expanding sample space.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("model", help="evaluate one expansion law on a time grid")
    p.add_argument("--kind", choices=sorted(_KINDS), required=True)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--a", type=float)
    p.add_argument("--t0", type=float, default=0.0)
    p.add_argument("--align-unit-time", action="store_true",
                   help="shift so that p = 1 at t = 1")
    _add_grid(p)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_model)

    p = sub.add_parser("simulate", help="exact discrete doubling process")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s0", type=int, default=1)
    p.add_argument("--draws", type=int, help="Monte Carlo draws (omit to skip)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("compose", help="independent processes acting together")
    p.add_argument("--spec", required=True,
                   help="e.g. exp:lambda=0.1,power:a=2,dexp:a=1:lambda=0.1629")
    _add_grid(p)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_compose)

    p = sub.add_parser("fit", help="fit an exchange-rate series")
    p.add_argument("--input", required=True)
    p.add_argument("--model", choices=sorted(_FIT_MODELS), required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--breakpoint", type=float, default=hi.WEIMAR_PIECEWISE["t_b"])
    group.add_argument("--scan-breakpoints", type=_float_list)
    p.add_argument("--range", type=_pair, help="lo,hi")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("figures", help="write the data behind figures 1-9")
    p.add_argument("--which", default="all", help="e.g. 5, 1,3 or 1..9 (default all)")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=_cmd_figures)

    p = sub.add_parser("synth", help="synthesize an exchange-rate series")
    p.add_argument("--model", choices=sorted(_SYNTH_PARAMS), default="piecewise")
    p.add_argument("--params", type=_float_list, required=True,
                   help="piecewise: A,l1,l2,tb; exp: A,l; dexp: c,l[,t_ref]")
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid", type=_triple, required=True, help="lo,hi,step")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_synth)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except UsageError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"{parser.prog} {args.command}: {exc}", file=sys.stderr)
        return 1
    return 0


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
