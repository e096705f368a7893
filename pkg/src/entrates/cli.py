"""Command-line entry point.

Subcommands: measures, eof, witness, scan {fig1|fig3|limit}, selftest.
JSON payloads go to stdout (sorted keys, full round-trip precision), CSV to
the requested path; diagnostics go to stderr.  Exit codes: 0 success,
2 usage/validation, 3 I/O.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import maxcorr, measures, rates, scans
from .measures import (
    BellMixtureParam,
    MaxCorr2x2Param,
    MeasureReport,
    bell_mixture_state,
    d_bell_mixture,
    d_gamma_from_amatrix,
    d_gamma_maxcorr,
    f_bell_mixture,
    f_maxcorr_2x2,
    maxcorr_2x2_state,
    maxcorr_amatrix,
    sec8_state,
    wootters_eof_2x2,
)
from .qstate import BipartiteState, ValidationError, load_density_matrix
from .rates import ConsistencyError, StateDescriptor, cycle_ratio_singlet

EXIT_USAGE = 2
EXIT_IO = 3

FAMILIES = ("bell-mix", "maxcorr-2x2", "maxcorr-general", "sec8", "raw")


@dataclass(frozen=True)
class StateFamilySpec:
    """One of the supported state families with its parameters."""

    family: str
    p: float | None = None
    q: float | None = None
    a2: float | None = None
    file: str | None = None

    @classmethod
    def parse(cls, text: str) -> "StateFamilySpec":
        """Parse compact notation: bell-mix:0.9, maxcorr-2x2:0.7,0.3,
        sec8:0.99, maxcorr-general:spec.json, raw:rho.json."""
        family, _, rest = text.partition(":")
        if family == "bell-mix":
            return cls(family=family, p=float(rest))
        if family == "sec8":
            return cls(family=family, p=float(rest))
        if family == "maxcorr-2x2":
            q_str, _, a2_str = rest.partition(",")
            return cls(family=family, q=float(q_str), a2=float(a2_str))
        if family in ("maxcorr-general", "raw"):
            if not rest:
                raise ValidationError(f"{family} needs a file path")
            return cls(family=family, file=rest)
        raise ValidationError(f"unknown family {family!r}; expected one of {FAMILIES}")


def _coerce(v):
    if isinstance(v, np.bool_):
        return bool(v)
    if isinstance(v, np.floating):
        return float(v)
    if isinstance(v, np.integer):
        return int(v)
    raise TypeError(f"not JSON serializable: {type(v).__name__}")


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, default=_coerce)


def _load_spec_file(path: str) -> maxcorr.MaxCorrSpec:
    with open(path) as fh:
        return maxcorr.MaxCorrSpec.from_json_dict(json.load(fh))


def _bipartite_from_raw(path: str) -> BipartiteState:
    rho = load_density_matrix(path)
    d = int(round(rho.dim**0.5))
    if d * d != rho.dim:
        raise ValidationError("raw state dimension is not a perfect square; use d (x) d")
    return BipartiteState(dim_a=d, dim_b=d, state=rho)


def _optimizer_config(args) -> maxcorr.OptimizerConfig:
    return maxcorr.OptimizerConfig(
        members=args.members,
        restarts=args.restarts,
        seed=args.seed,
        tol=args.tol,
        max_sweeps=args.max_sweeps,
    )


def family_report(spec: StateFamilySpec, config=maxcorr.OptimizerConfig()) -> MeasureReport:
    """All computable measures for one family member; unknowns stay None."""
    if spec.family == "bell-mix":
        param = BellMixtureParam(spec.p)
        d = d_bell_mixture(param)
        f = f_bell_mixture(param)
        return MeasureReport(
            d=d, f_cost=f, d_gamma=d, cycle_ratio=cycle_ratio_singlet(d, f),
            flags=["closed-form"],
        )
    if spec.family == "maxcorr-2x2":
        param = MaxCorr2x2Param(q=spec.q, amp_a=spec.a2**0.5)
        f = f_maxcorr_2x2(param)
        dg = d_gamma_maxcorr(maxcorr_2x2_state(param))
        flags = ["closed-form", "ppt-formula"]
        # LOCC distillable entanglement is known only where the state is a
        # Bell mixture (|a|^2 = 1/2), pure (q = 1), or separable (q = 1/2)
        d = dg if (abs(spec.a2 - 0.5) < 1e-12 or spec.q in (0.5, 1.0)) else None
        if d is None:
            flags.append("d-unknown")
        ratio = None if d is None else cycle_ratio_singlet(d, f)
        return MeasureReport(d=d, f_cost=f, d_gamma=dg, cycle_ratio=ratio, flags=flags)
    if spec.family == "sec8":
        state = sec8_state(spec.p)
        f, _ = wootters_eof_2x2(state)
        dg = d_gamma_maxcorr(state)
        d = dg if spec.p in (0.0, 1.0) else None  # pure / product endpoints
        flags = ["wootters", "ppt-formula"] + ([] if d is not None else ["d-unknown"])
        ratio = None if d is None or f <= 1e-12 else cycle_ratio_singlet(d, f)
        return MeasureReport(d=d, f_cost=f, d_gamma=dg, cycle_ratio=ratio, flags=flags)
    if spec.family == "maxcorr-general":
        mc = _load_spec_file(spec.file)
        dg = d_gamma_from_amatrix(mc.a_matrix)
        if mc.dim == 2:
            f, _ = wootters_eof_2x2(maxcorr.build_maxcorr(mc))
            flags = ["wootters", "ppt-formula", "d-unknown"]
        else:
            f = maxcorr.reduced_eof(mc, config).value
            flags = ["optimizer-upper-bound", "ppt-formula", "d-unknown"]
        return MeasureReport(d=None, f_cost=f, d_gamma=dg, cycle_ratio=None, flags=flags)
    if spec.family == "raw":
        state = _bipartite_from_raw(spec.file)
        try:
            a = maxcorr_amatrix(state)
        except ValidationError:
            return MeasureReport(
                d=None, f_cost=None, d_gamma=None, cycle_ratio=None,
                flags=["not-maximally-correlated"],
            )
        dg = d_gamma_from_amatrix(a)
        if state.dim_a == 2:
            f, _ = wootters_eof_2x2(state)
            flags = ["wootters", "ppt-formula", "d-unknown"]
        else:
            f = maxcorr.reduced_eof(
                maxcorr.MaxCorrSpec(dim=state.dim_a, a_matrix=a), config
            ).value
            flags = ["optimizer-upper-bound", "ppt-formula", "d-unknown"]
        return MeasureReport(d=None, f_cost=f, d_gamma=dg, cycle_ratio=None, flags=flags)
    raise ValidationError(f"unknown family {spec.family!r}")


def family_descriptor(spec: StateFamilySpec, config=maxcorr.OptimizerConfig()) -> StateDescriptor:
    report = family_report(spec, config)
    params = tuple(
        v for v in (spec.p, spec.q, spec.a2) if v is not None
    ) or (spec.file,)
    if report.f_cost is None:
        raise ValidationError(f"family {spec.family} has no computable cost")
    return StateDescriptor(
        family=spec.family,
        params=params,
        f=report.f_cost,
        d=report.d,
        d_gamma=report.d_gamma,
        flags=tuple(report.flags),
    )


def _cmd_measures(args) -> int:
    spec = StateFamilySpec(
        family=args.family, p=args.p, q=args.q, a2=args.a2, file=args.file
    )
    report = family_report(spec, _optimizer_config(args))
    print(_dump(report.to_json_dict()))
    return 0


def _cmd_eof(args) -> int:
    result = maxcorr.reduced_eof(_load_spec_file(args.file), _optimizer_config(args))
    print(_dump(result.to_json_dict()))
    return 0


def _cmd_witness(args) -> int:
    config = _optimizer_config(args)
    rho = family_descriptor(StateFamilySpec.parse(args.rho), config)
    sigma = family_descriptor(StateFamilySpec.parse(args.sigma), config)
    result = rates.rdiff_sign_witness(rho, sigma)
    d_sigma_eff = sigma.d if sigma.d is not None else sigma.d_gamma
    payload = result.to_json_dict()
    if rho.d is not None and d_sigma_eff is not None:
        f_value, holds = rates.gerakol_witness(rho.d, rho.f, d_sigma_eff, sigma.f)
        payload["f_value"] = f_value
        payload["holds"] = holds
    else:
        payload["f_value"] = None
        payload["holds"] = None
    r_rho = None if rho.d is None else cycle_ratio_singlet(rho.d, rho.f)
    r_sigma = None if d_sigma_eff is None else cycle_ratio_singlet(d_sigma_eff, sigma.f)
    try:
        payload["bounds"] = rates.singlet_relative_bounds(r_rho, r_sigma).to_json_dict()
    except ValidationError:
        payload["bounds"] = {"lower": None, "upper": None, "source": rates.SOURCE_SINGLET}
    print(_dump(payload))
    return 0


def _cmd_scan(args) -> int:
    def rng(lo, hi, lo_default, hi_default):
        return (lo_default if lo is None else lo, hi_default if hi is None else hi)

    if args.kind == "fig1":
        grid = scans.fig1_scan(
            p_range=rng(args.p_min, args.p_max, 0.505, 1.0),
            q_range=rng(args.q_min, args.q_max, 0.505, 0.995),
            step=args.step,
        )
    elif args.kind == "fig3":
        grid = scans.fig3_scan(
            q_range=rng(args.q_min, args.q_max, 0.5, 1.0),
            a2_range=rng(args.a2_min, args.a2_max, args.step, 0.5),
            step=args.step,
        )
    else:
        p_list = (
            tuple(float(x) for x in args.p_list.split(","))
            if args.p_list
            else scans.DEFAULT_LIMIT_PS
        )
        grid = scans.limit_scan(p_list)
    try:
        grid.write_csv(args.out)
    except OSError as exc:
        print(f"cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {len(grid.rows)} rows to {args.out}", file=sys.stderr)
    return 0


def _cmd_selftest(args) -> int:
    failures = []

    def check(name, ok):
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
        if not ok:
            failures.append(name)

    ps = np.linspace(0.5005, 0.9995, 999)
    worst = max(
        abs(f_bell_mixture(BellMixtureParam(p)) - wootters_eof_2x2(bell_mixture_state(BellMixtureParam(p)))[0])
        for p in ps
    )
    check(f"closed-form F vs Wootters on Bell mixtures (max dev {worst:.2e})", worst <= 1e-9)

    worst = max(
        abs(d_bell_mixture(BellMixtureParam(p)) - d_gamma_maxcorr(bell_mixture_state(BellMixtureParam(p))))
        for p in ps
    )
    check(f"D vs entropy-formula D_Gamma on Bell mixtures (max dev {worst:.2e})", worst <= 1e-9)

    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(20):
        g = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        a = g @ g.conj().T
        a /= np.trace(a).real
        spec = maxcorr.MaxCorrSpec(dim=2, a_matrix=a)
        got = maxcorr.reduced_eof(spec).value
        want, _ = wootters_eof_2x2(maxcorr.build_maxcorr(spec))
        worst = max(worst, abs(got - want))
    check(f"reduced EoF vs Wootters on random 2x2 specs (max dev {worst:.2e})", worst <= 1e-5)

    if failures:
        print(f"{len(failures)} check(s) failed", file=sys.stderr)
        return 1
    return 0


def _add_optimizer_flags(parser):
    parser.add_argument("--members", type=int, default=None, help="ensemble size K (default rank^2)")
    parser.add_argument("--restarts", type=int, default=32)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--tol", type=float, default=1e-10)
    parser.add_argument("--max-sweeps", type=int, default=500)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entrates",
        description="Entanglement transformation rates, bounds and irreversibility witnesses.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_meas = sub.add_parser("measures", help="measures of one state family member")
    p_meas.add_argument("--family", choices=FAMILIES, required=True)
    p_meas.add_argument("--p", type=float, default=None)
    p_meas.add_argument("--q", type=float, default=None)
    p_meas.add_argument("--a2", type=float, default=None)
    p_meas.add_argument("--file", default=None)
    _add_optimizer_flags(p_meas)
    p_meas.set_defaults(func=_cmd_measures)

    p_eof = sub.add_parser("eof", help="reduced entanglement-of-formation optimization")
    p_eof.add_argument("--file", required=True, help="MaxCorrSpec JSON")
    _add_optimizer_flags(p_eof)
    p_eof.set_defaults(func=_cmd_eof)

    p_wit = sub.add_parser("witness", help="R_Diff sign classification for a state pair")
    p_wit.add_argument("--rho", required=True, help="e.g. bell-mix:0.99")
    p_wit.add_argument("--sigma", required=True, help="e.g. maxcorr-2x2:0.7,0.3")
    _add_optimizer_flags(p_wit)
    p_wit.set_defaults(func=_cmd_witness)

    p_scan = sub.add_parser("scan", help="parameter grid sweeps (CSV + metadata)")
    p_scan.add_argument("kind", choices=("fig1", "fig3", "limit"))
    p_scan.add_argument("--out", required=True)
    p_scan.add_argument("--step", type=float, default=scans.DEFAULT_STEP)
    p_scan.add_argument("--p-min", type=float, default=None)
    p_scan.add_argument("--p-max", type=float, default=None)
    p_scan.add_argument("--q-min", type=float, default=None)
    p_scan.add_argument("--q-max", type=float, default=None)
    p_scan.add_argument("--a2-min", type=float, default=None)
    p_scan.add_argument("--a2-max", type=float, default=None)
    p_scan.add_argument("--p-list", default=None, help="comma-separated p values (limit scan)")
    p_scan.set_defaults(func=_cmd_scan)

    p_self = sub.add_parser("selftest", help="run the oracle-equivalence suites")
    p_self.set_defaults(func=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValidationError, ConsistencyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
