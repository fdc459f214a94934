"""Command-line front end.

Subcommands map one-to-one onto the library modules: ``capacity``,
``exponents`` and ``tradeoff`` read a JSON channel config, ``poisson``
and ``gaussian`` take their parameters as flags, ``ensemble`` runs the
exact small-block certification, ``figures`` writes the reference curve
families, and ``selftest`` runs the invariant battery.

Exit codes: 0 success, 1 usage error, 2 precondition violation
(bad parameters or config), 3 property failure (a structural check or
certified bound failed). Output is deterministic for a fixed command
line: no timestamps, fixed default seeds, 17-significant-digit floats.
"""

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from . import ensemble_sim
from . import figures as figmod
from . import gaussian_wiretap as gw
from . import poisson_wiretap as pw
from .channel_core import DiscreteChannel, WiretapPair, load_wiretap_config
from .exponent_engine import (
    ExponentCurve,
    ExponentQuery,
    reliability_curve,
    secrecy_capacity,
    secrecy_curve,
    tradeoff_scenarios,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PRECONDITION = 2
EXIT_PROPERTY = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _fmt(x):
    return format(float(x), ".17g")


def _curve_rows(curve):
    meta = curve.meta
    rhos = meta.get("argmax_rho")
    rs = meta.get("argmax_r")
    ss = meta.get("argmax_s")
    rows = []
    for i in range(len(curve)):
        rows.append(
            {
                "rate": _fmt(curve.rates[i]),
                "exponent": _fmt(curve.exponents[i]),
                "argmax_rho": _fmt(rhos[i]) if rhos is not None else "",
                "argmax_r": _fmt(rs[i]) if rs is not None else "",
                "argmax_s": _fmt(ss[i]) if ss is not None else "",
            }
        )
    return rows


CSV_COLUMNS = ("rate", "exponent", "argmax_rho", "argmax_r", "argmax_s")


def curve_to_csv(curve, header_lines=()):
    lines = [f"# {h}" for h in header_lines]
    lines.append(",".join(CSV_COLUMNS))
    for row in _curve_rows(curve):
        lines.append(",".join(row[c] for c in CSV_COLUMNS))
    return "\n".join(lines) + "\n"


def curve_to_json(curve):
    return {
        "meta": {k: v for k, v in curve.meta.items()},
        "points": [
            {k: (float(v) if v != "" else None) for k, v in row.items()}
            for row in _curve_rows(curve)
        ],
    }


def read_curve_csv(path):
    """Re-read an emitted CSV; returns (rates, exponents) as float arrays."""
    rates, exps = [], []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#") or line.startswith("rate,"):
                continue
            parts = line.split(",")
            rates.append(float(parts[0]))
            exps.append(float(parts[1]))
    return np.array(rates), np.array(exps)


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _emit_json(payload, out):
    _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", out)


def _emit_curves(named_curves, args, context):
    header = [f"version {__version__}", f"params {json.dumps(context, sort_keys=True)}"]
    if args.format == "json":
        payload = {"version": __version__, "params": context}
        payload.update({name: curve_to_json(c) for name, c in named_curves})
        _emit_json(payload, args.out)
        return
    if args.out is None:
        chunks = [curve_to_csv(c, header + [f"curve {name}"]) for name, c in named_curves]
        sys.stdout.write("\n".join(chunks))
        return
    base = Path(args.out)
    for name, curve in named_curves:
        target = base if len(named_curves) == 1 else base.with_name(f"{base.stem}_{name}{base.suffix or '.csv'}")
        target.write_text(curve_to_csv(curve, header + [f"curve {name}"]), encoding="utf-8")


def _query_from_config(cfg, rate_b=0.0, rate_e=0.0):
    if cfg["q"] is None:
        raise ValueError("this command requires \"q\" in the config")
    return ExponentQuery(cfg["pair"], cfg["q"], cfg["costs"], cfg["gamma"], rate_b=rate_b, rate_e=rate_e)


def _standard_windows(query, points):
    info_b = query.mutual_information("bob")
    info_e = query.mutual_information("eve")
    f_rates = np.linspace(0.02 * info_b, 0.98 * info_b, points)
    h_hi = min(info_e + 1.0, max(2.0 * info_e, 1.02 * info_b))
    h_rates = np.linspace(1.02 * info_e, h_hi, points)
    return f_rates, h_rates


def cmd_capacity(args):
    cfg = load_wiretap_config(args.config)
    result = secrecy_capacity(cfg["pair"], cfg["costs"], cfg["gamma"], aux_dim=args.aux_dim, seed=args.seed)
    payload = {
        "value_nats": result.value,
        "input_law": result.input_law.tolist(),
        "more_capable": result.more_capable,
        "heuristic_lower_bound": result.heuristic,
        "min_info_gap": result.min_info_gap,
    }
    if result.aux is not None:
        payload["aux_channel"] = result.aux.rows.tolist()
    _emit_json(payload, args.out)
    return EXIT_OK


def cmd_exponents(args):
    cfg = load_wiretap_config(args.config)
    query = _query_from_config(cfg)
    f_rates, h_rates = _standard_windows(query, args.points)
    curves = [
        ("reliability", reliability_curve(query, f_rates)),
        ("secrecy", secrecy_curve(query, h_rates)),
    ]
    context = {"config": str(args.config), "gamma": query.gamma, "q": query.input.probs.tolist()}
    _emit_curves(curves, args, context)
    return EXIT_OK


def cmd_tradeoff(args):
    cfg = load_wiretap_config(args.config)
    query = _query_from_config(cfg)
    sweep = [float(x) for x in args.sweep.split(",") if x.strip()]
    scenarios = tradeoff_scenarios(query, args.mechanism, sweep, points=args.points)
    payload = {"version": __version__, "mechanism": args.mechanism, "scenarios": []}
    all_ok = True
    for sc in scenarios:
        all_ok &= sc.ok
        payload["scenarios"].append(
            {
                "label": sc.label,
                "ok": sc.ok,
                "checks": {k: {"ok": ok, "slack": slack} for k, (ok, slack) in sc.checks.items()},
                "reliability": curve_to_json(sc.reliability),
                "secrecy": curve_to_json(sc.secrecy),
            }
        )
    _emit_json(payload, args.out)
    return EXIT_OK if all_ok else EXIT_PROPERTY


def _poisson_params(args):
    return pw.PoissonWiretapParams(args.Ay, args.Az, args.ly, args.lz, args.gamma)


def cmd_poisson(args):
    params = _poisson_params(args)
    if args.action == "capacity":
        cap = pw.capacity(params)
        _emit_json(
            {
                "value_nats_per_second": cap.value,
                "q_star": cap.q_star,
                "q_capped": cap.q_capped,
                "residual": cap.residual,
            },
            args.out,
        )
        return EXIT_OK
    if args.q is None:
        raise ValueError("poisson curves need --q")
    if args.action == "curves":
        curves = [
            ("reliability", pw.reliability_curve(params, args.q, points=args.points)),
            ("secrecy", pw.secrecy_curve(params, args.q, points=args.points)),
        ]
        context = {"Ay": args.Ay, "Az": args.Az, "ly": args.ly, "lz": args.lz, "gamma": args.gamma, "q": args.q}
        _emit_curves(curves, args, context)
        return EXIT_OK
    # concat
    if args.a is None or args.b is None:
        raise ValueError("poisson concat needs --a and --b")
    conc = pw.ConcatenationParams(args.a, args.b)
    plus = pw.concatenate_params(params, conc)
    cap = pw.concatenated_capacity(params, conc)
    f_plus, h_plus = pw.concatenated_curves(params, conc, args.q, points=args.points)
    context = {
        "Ay": args.Ay, "Az": args.Az, "ly": args.ly, "lz": args.lz,
        "gamma": args.gamma, "q": args.q, "a": args.a, "b": args.b,
        "transformed": {
            "Ay": plus.peak_bob, "Az": plus.peak_eve,
            "ly": plus.dark_bob, "lz": plus.dark_eve, "gamma": plus.gamma,
        },
        "capacity_nats_per_second": cap.value,
    }
    _emit_curves([("reliability_prefixed", f_plus), ("secrecy_prefixed", h_plus)], args, context)
    return EXIT_OK


def cmd_gaussian(args):
    params = gw.GaussianWiretapParams(args.Ay, args.Az, args.sy, args.sz, args.gamma)
    if args.action == "capacity":
        r_param, r_expl = gw.critical_rates(params)
        _emit_json(
            {
                "value_nats": gw.capacity(params),
                "snr_bob": params.snr_bob,
                "snr_eve": params.snr_eve,
                "critical_rate_parametric": r_param,
                "critical_rate_explicit": r_expl,
            },
            args.out,
        )
        return EXIT_OK
    points = args.points
    if args.action == "reliability":
        cap = 0.5 * np.log1p(params.snr_bob)
        rates = np.linspace(0.02 * cap, 0.98 * cap, points)
        fn = gw.reliability_forward_tilt if args.variant == "forward" else gw.reliability_gallager
        name = f"reliability_{args.variant}"
    else:
        floor = 0.5 * np.log1p(params.snr_eve)
        rates = np.linspace(1.001 * floor, floor + 0.35, points)
        fn = gw.secrecy_forward_tilt if args.variant == "forward" else gw.secrecy_gallager_type
        name = f"secrecy_{args.variant}"
    curve = ExponentCurve(rates, [fn(params, float(r)) for r in rates], {"function": name})
    context = {"Ay": args.Ay, "Az": args.Az, "sy": args.sy, "sz": args.sz, "gamma": args.gamma, "variant": args.variant}
    _emit_curves([(name, curve)], args, context)
    return EXIT_OK


def cmd_ensemble(args):
    pair = WiretapPair(DiscreteChannel.bsc(args.eps_y), DiscreteChannel.bsc(args.eps_z))
    spec = ensemble_sim.EnsembleSpec(pair, args.n, args.M, args.L, [1.0 - args.q1, args.q1])
    report = ensemble_sim.certification_report(spec)
    if args.mc_samples:
        err_mc, err_se = ensemble_sim.mc_ensemble_error(spec, args.mc_samples, args.seed)
        div_mc, div_se = ensemble_sim.mc_ensemble_divergence(spec, args.mc_samples, args.seed)
        report["monte_carlo"] = {
            "error": err_mc, "error_stderr": err_se,
            "divergence": div_mc, "divergence_stderr": div_se,
        }
    _emit_json(report, args.out)
    slacks = report["slacks"]
    ok = all(v >= -1e-12 for v in slacks.values())
    return EXIT_OK if ok else EXIT_PROPERTY


def cmd_figures(args):
    ids = list(figmod.FIGURE_IDS) if args.which == "all" else [int(args.which)]
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest = {"version": __version__, "figures": {}}
    all_ok = True
    for fig_id in ids:
        data = figmod.figure_data(fig_id, points=args.points)
        files = []
        for name, curve in data.curves:
            fname = f"fig{fig_id}_{name}.csv"
            header = [
                f"version {__version__}",
                f"figure {fig_id}",
                f"curve {name}",
                f"params {json.dumps(data.params, sort_keys=True)}",
            ]
            (out_dir / fname).write_text(curve_to_csv(curve, header), encoding="utf-8")
            files.append(fname)
        checks = figmod.shape_report(data)
        ok = all(flag for flag, _ in checks.values())
        all_ok &= ok
        manifest["figures"][str(fig_id)] = {
            "files": files,
            "ok": ok,
            "checks": {k: {"ok": flag, "detail": detail} for k, (flag, detail) in checks.items()},
        }
    _emit_json(manifest, args.out)
    return EXIT_OK if all_ok else EXIT_PROPERTY


def _selftest_cases(seed, fast):
    """Yield (name, callable) pairs; each callable returns (ok, detail)."""
    import math

    from . import secrecy_metrics as sm
    from .channel_core import concatenate, lifted_cost, mutual_information
    from .exponent_engine import reliability_zero_rate, secrecy_zero_rate

    rng = np.random.default_rng(seed)

    def random_channel(nin, nout):
        rows = rng.random((nin, nout)) + 0.05
        return DiscreteChannel(rows / rows.sum(axis=1, keepdims=True))

    def check_channel_invariants():
        worst = 0.0
        for _ in range(30):
            aux = random_channel(2, 2)
            ch = random_channel(2, 3)
            comp = concatenate(aux, ch)
            worst = max(worst, float(np.max(np.abs(comp.rows.sum(axis=1) - 1.0))))
            q = rng.dirichlet(np.ones(2))
            induced = q @ aux.rows
            dpi = mutual_information(induced, ch) - mutual_information(q, comp)
            if dpi < -1e-10:
                return False, f"data-processing violated by {dpi}"
            costs = rng.random(3) * 2.0
            gap = abs(float(q @ lifted_cost(aux2 := random_channel(2, 3), costs)) - float((q @ aux2.rows) @ costs))
            if gap > 1e-12:
                return False, f"lifted cost expectation gap {gap}"
        return worst <= 1e-12, f"max row-sum error {worst:.2e}"

    def check_lattice():
        count = 100 if fast else 400
        for _ in range(count):
            m = int(rng.integers(1, 9))
            k = int(rng.integers(2, 9))
            members = rng.dirichlet(np.ones(k), size=m)
            target = rng.dirichlet(np.ones(k))
            slacks = sm.inequality_slacks(sm.OutputEnsemble(members, target))
            for name in ("pinsker", "triangle", "split_triangle"):
                if slacks[name] < -1e-10:
                    return False, f"{name} slack {slacks[name]}"
            if abs(slacks["divergence_split_residual"]) > 1e-10:
                return False, f"split residual {slacks['divergence_split_residual']}"
        return True, f"{count} ensembles"

    def check_zero_crossings():
        query = figmod.bsc_query()
        gap_b = abs(reliability_zero_rate(query) - query.mutual_information("bob"))
        gap_e = abs(secrecy_zero_rate(query) - query.mutual_information("eve"))
        return gap_b < 1e-5 and gap_e < 1e-5, f"gaps {gap_b:.2e}, {gap_e:.2e}"

    def check_ensemble_bounds():
        for n in (2, 3):
            for m in (1, 2):
                for l in (1, 2):
                    for eps in (0.1, 0.3):
                        pair = WiretapPair(DiscreteChannel.bsc(eps), DiscreteChannel.bsc(eps))
                        spec = ensemble_sim.EnsembleSpec(pair, n, m, l, [0.5, 0.5])
                        rep = ensemble_sim.certification_report(spec)
                        if min(rep["slacks"].values()) < -1e-12:
                            return False, f"slack violated at n={n}, M={m}, L={l}, eps={eps}"
        return True, "bounds hold"

    def check_poisson():
        params = figmod.poisson_params()
        cap = pw.capacity(params)
        if cap.residual >= 1e-12:
            return False, f"residual {cap.residual}"
        qs = np.linspace(0.0, params.gamma, 20001)
        scan = max(pw.information_gap(params, float(q)) for q in qs)
        if abs(scan - cap.value) > 1e-9:
            return False, f"scan mismatch {abs(scan - cap.value)}"
        zero_dark = pw.PoissonWiretapParams(12.0, 5.0, 0.0, 0.0, 0.5)
        expect = 7.0 / math.e
        got = pw.capacity(zero_dark).value
        return abs(got - expect) < 1e-10, f"zero-dark capacity off by {abs(got - expect):.2e}"

    def check_gaussian():
        params = figmod.gaussian_params()
        cap = gw.capacity(params)
        direct = 0.5 * math.log1p(params.snr_bob) - 0.5 * math.log1p(params.snr_eve)
        if abs(cap - direct) > 1e-12:
            return False, "capacity identity"
        for a in np.linspace(0.01, 100.0, 200):
            p = rng.random()
            lhs = p * p * a / (2.0 * (1.0 + p) * (1.0 + p + a))
            rhs = (-p) ** 2 * a / (2.0 * (1.0 - (-p)) * (1.0 - (-p) + a))
            if abs(lhs - rhs) > 1e-12:
                return False, "parametric duality"
        try:
            gw.GaussianWiretapParams(1.0, 2.0, 1.0, 0.1, 1.0)
            return False, "degradedness violation not rejected"
        except ValueError:
            pass
        sweep = np.linspace(1e-3, 100.0, 1000)
        for a in sweep:
            p = gw.GaussianWiretapParams(1.0, 1.0, 1.0 / math.sqrt(a), 1.0 / math.sqrt(a), 1.0)
            r1, r2 = gw.critical_rates(p)
            if r1 > r2 + 1e-12:
                return False, f"critical rates out of order at snr={a}"
        return True, "identities hold"

    def check_figures():
        ids = (5, 8, 10, 11) if fast else figmod.FIGURE_IDS
        for fig_id in ids:
            data = figmod.figure_data(fig_id, points=17)
            checks = figmod.shape_report(data)
            for name, (ok, detail) in checks.items():
                if not ok:
                    return False, f"figure {fig_id} {name}: {detail}"
        return True, f"figures {ids}"

    yield "channel_invariants", check_channel_invariants
    yield "secrecy_measure_lattice", check_lattice
    yield "exponent_zero_crossings", check_zero_crossings
    yield "ensemble_bound_certification", check_ensemble_bounds
    yield "poisson_capacity", check_poisson
    yield "gaussian_identities", check_gaussian
    yield "figure_shapes", check_figures


def cmd_selftest(args):
    failures = 0
    for name, fn in _selftest_cases(args.seed, args.fast):
        try:
            ok, detail = fn()
        except Exception as exc:  # surface, keep running the rest
            ok, detail = False, f"exception: {exc}"
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
        failures += 0 if ok else 1
    print(f"{'OK' if failures == 0 else 'FAILED'} ({failures} failing)")
    return EXIT_OK if failures == 0 else EXIT_PROPERTY


def build_parser():
    parser = _Parser(prog="wiretap-exponents", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", default=None, help="output path (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--points", type=int, default=33)

    p = sub.add_parser("capacity", help="secrecy capacity from a channel config")
    p.add_argument("--config", required=True)
    p.add_argument("--aux-dim", type=int, default=2)
    common(p)
    p.set_defaults(fn=cmd_capacity)

    p = sub.add_parser("exponents", help="reliability and secrecy curves from a channel config")
    p.add_argument("--config", required=True)
    common(p)
    p.set_defaults(fn=cmd_exponents)

    p = sub.add_parser("tradeoff", help="tradeoff scenario sweeps")
    p.add_argument("--config", required=True)
    p.add_argument("--mechanism", required=True, choices=("rate_shift", "rate_exchange", "concatenate", "cost_change"))
    p.add_argument("--sweep", required=True, help="comma-separated sweep values")
    common(p)
    p.set_defaults(fn=cmd_tradeoff)

    p = sub.add_parser("poisson", help="Poisson wiretap capacity and curves")
    p.add_argument("action", choices=("capacity", "curves", "concat"))
    p.add_argument("--Ay", type=float, required=True)
    p.add_argument("--Az", type=float, required=True)
    p.add_argument("--ly", type=float, required=True)
    p.add_argument("--lz", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--q", type=float, default=None)
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--b", type=float, default=None)
    common(p)
    p.set_defaults(fn=cmd_poisson)

    p = sub.add_parser("gaussian", help="Gaussian wiretap capacity and curves")
    p.add_argument("action", choices=("capacity", "reliability", "secrecy"))
    p.add_argument("--variant", choices=("forward", "gallager"), default="forward")
    p.add_argument("--Ay", type=float, required=True)
    p.add_argument("--Az", type=float, required=True)
    p.add_argument("--sy", type=float, required=True)
    p.add_argument("--sz", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    common(p)
    p.set_defaults(fn=cmd_gaussian)

    p = sub.add_parser("ensemble", help="exact small-block ensemble certification")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--eps-y", type=float, required=True)
    p.add_argument("--eps-z", type=float, required=True)
    p.add_argument("--q1", type=float, default=0.5)
    p.add_argument("--mc-samples", type=int, default=0)
    common(p)
    p.set_defaults(fn=cmd_ensemble)

    p = sub.add_parser("figures", help="emit the reference figure curve data")
    p.add_argument("--which", default="all", help="figure id 2..13 or 'all'")
    p.add_argument("--out-dir", default="figures_out")
    common(p)
    p.set_defaults(fn=cmd_figures)

    p = sub.add_parser("selftest", help="run the invariant battery")
    p.add_argument("--fast", action="store_true")
    common(p)
    p.set_defaults(fn=cmd_selftest)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ValueError as exc:
        print(f"precondition violation: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
