"""Command-line front end.

Subcommands: ``preimage``, ``capacity``, ``flow``, ``exact``, ``study``.
Problem files are JSON; see README for the schema.  Exit codes: 0 success,
1 input/geometry error, 2 numerical non-convergence.
"""

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

from .capacity import (
    STUDY_FAMILIES,
    CondenserSpec,
    capacity,
    capacity_study,
    charges_from_boundary,
    exact_cap_horizontal,
    exact_cap_vertical,
    random_slits_family,
)
from .errors import ConvergenceError, StripcapError
from .flow import GridSpec, horizontal_slit_map, stream_grid
from .geometry import HALF_PI, StripSlitDomain
from .preimage import IterationConfig, iterate

DEFAULT_NUMERICS = {
    "n": 1024,
    "r": 0.2,
    "eps": 1e-14,
    "max_iter": 100,
    "solver_tol": 1e-14,
    "solver_maxit": 100,
}


@dataclass
class ProblemFile:
    """Parsed problem description; round-trips through JSON unchanged."""

    domain: StripSlitDomain
    delta: list = None
    numerics: dict = field(default_factory=dict)
    study: dict = None
    flow: dict = None

    @classmethod
    def parse(cls, data):
        if "slits" not in data or not data["slits"]:
            raise ValueError("problem file needs a non-empty 'slits' list")
        domain = StripSlitDomain.from_dict(data)
        numerics = dict(data.get("numerics", {}))
        unknown = set(numerics) - set(DEFAULT_NUMERICS)
        if unknown:
            raise ValueError(f"unknown numerics keys: {sorted(unknown)}")
        return cls(
            domain=domain,
            delta=data.get("delta"),
            numerics=numerics,
            study=data.get("study"),
            flow=data.get("flow"),
        )

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.parse(json.load(fh))

    def to_dict(self):
        out = self.domain.to_dict()
        if self.delta is not None:
            out["delta"] = list(self.delta)
        if self.numerics:
            out["numerics"] = dict(self.numerics)
        if self.study is not None:
            out["study"] = self.study
        if self.flow is not None:
            out["flow"] = self.flow
        return out

    def config(self, overrides=None):
        values = dict(DEFAULT_NUMERICS)
        values.update(self.numerics)
        for key, val in (overrides or {}).items():
            if val is not None:
                values[key] = val
        return IterationConfig(**values)


def _write_json(path, payload):
    text = json.dumps(payload, sort_keys=True, indent=1)
    if path in (None, "-"):
        print(text)
    else:
        with open(path, "w") as fh:
            fh.write(text + "\n")


def _complex_pairs(arr):
    return [[z.real, z.imag] for z in np.asarray(arr).reshape(-1)]


def _overrides(args):
    return {
        "n": args.n,
        "r": args.r,
        "eps": args.eps,
        "max_iter": args.max_iter,
    }


def _emit_config(problem, args):
    cfg = problem.config(_overrides(args))
    print(json.dumps(asdict(cfg), sort_keys=True))


def cmd_preimage(args):
    problem = ProblemFile.load(args.input)
    if args.emit_config:
        _emit_config(problem, args)
        return 0
    cfg = problem.config(_overrides(args))
    lines = (lambda rec: print(json.dumps(rec, sort_keys=True))) if args.progress else None
    result = iterate(problem.domain, cfg, progress=lines)
    payload = {
        "converged": result.converged,
        "error_history": result.error_history,
        "gmres_history": result.gmres_history,
        "ellipses": [
            {"z": [p.z.real, p.z.imag], "a": p.a, "theta": p.theta, "r": p.r}
            for p in result.params
        ],
        "boundary": {
            "eta": [_complex_pairs(row) for row in result.map.bp.eta],
            "zeta": [
                _complex_pairs(np.nan_to_num(row, posinf=0.0, neginf=0.0))
                for row in result.map.zeta
            ],
        },
        "numerics": asdict(cfg),
    }
    _write_json(args.out, payload)
    return 0 if result.converged else 2


def _parse_exact(text):
    try:
        kind, raw = text.split(":", 1)
        s = float(raw)
    except ValueError:
        raise ValueError(f"expected KIND:S (e.g. vertical:0.5), got {text!r}")
    if kind == "vertical":
        return exact_cap_vertical(s)
    if kind == "horizontal":
        return exact_cap_horizontal(s)
    raise ValueError(f"unknown exact-formula kind {kind!r}")


def cmd_capacity(args):
    problem = ProblemFile.load(args.input)
    if args.emit_config:
        _emit_config(problem, args)
        return 0
    cfg = problem.config(_overrides(args))
    spec = CondenserSpec(problem.domain, problem.delta)
    if problem.delta is None:
        print(f"# delta not given; defaulting to all ones (m={problem.domain.m})")
    res = capacity(spec, cfg)
    print(f"cap = {res.cap:.15g}")
    payload = {
        "cap": res.cap,
        "a": list(res.a),
        "c": res.c,
        "delta": list(spec.delta),
        "converged": res.preimage.converged,
        "iterations": res.preimage.iterations,
        "error_history": res.preimage.error_history,
        "gmres_history": res.preimage.gmres_history,
        "numerics": asdict(cfg),
    }
    if args.exact:
        ref = _parse_exact(args.exact)
        rel = abs(res.cap - ref) / abs(ref)
        print(f"exact = {ref:.15g}")
        print(f"relative error = {rel:.3e}")
        payload["exact"] = ref
        payload["relative_error"] = rel
    if args.out:
        _write_json(args.out, payload)
    return 0


def cmd_flow(args):
    problem = ProblemFile.load(args.input)
    if args.emit_config:
        _emit_config(problem, args)
        return 0
    cfg = problem.config(_overrides(args))
    spec = problem.flow or {}
    try:
        grid = GridSpec(
            x_min=spec.get("x", [-6.0, 6.0])[0],
            x_max=spec.get("x", [-6.0, 6.0])[1],
            y_min=spec.get("y", [-1.5, 1.5])[0],
            y_max=spec.get("y", [-1.5, 1.5])[1],
            nx=int(spec.get("nx", 200)),
            ny=int(spec.get("ny", 100)),
        )
    except (TypeError, IndexError, ValueError) as exc:
        raise ValueError(f"malformed flow grid spec: {exc}") from exc
    exclusion = float(spec.get("exclusion", 0.02))
    pre = iterate(problem.domain, cfg)
    if not pre.converged:
        print("preimage iteration did not converge", file=sys.stderr)
        return 2
    upsilon = horizontal_slit_map(pre)
    out_field = stream_grid(pre, upsilon, grid, exclusion=exclusion)
    if args.json:
        out_field.to_json(args.out or "flow.json")
    else:
        out_field.to_csv(args.out or "flow.csv")
    if args.check:
        spread = [
            float(np.ptp(upsilon.zeta[j].imag)) for j in range(1, upsilon.m + 1)
        ]
        finite = np.isfinite(upsilon.zeta[0])
        wall = np.abs(np.abs(upsilon.zeta[0].imag[finite]) - HALF_PI).max()
        print(f"slit stream spread: max {max(spread):.3e}")
        print(f"wall deviation from +-pi/2: {wall:.3e}")
        print(f"masked failures: {out_field.failures}")
    return 0


def cmd_exact(args):
    print(f"{_parse_exact(args.formula):.15g}")
    return 0


def cmd_study(args):
    problem = ProblemFile.load(args.input)
    if args.emit_config:
        _emit_config(problem, args)
        return 0
    cfg = problem.config(_overrides(args))
    spec = problem.study
    if not spec or "family" not in spec:
        raise ValueError("problem file needs a 'study' section with a 'family'")
    family = spec["family"]
    if family in STUDY_FAMILIES:
        samples = STUDY_FAMILIES[family](spec.get("values", []), cfg)
    elif family == "random_horizontal":
        samples = random_slits_family(
            count=int(spec.get("count", 10)),
            m=int(spec.get("m", 10)),
            seed=args.seed if args.seed is not None else int(spec.get("seed", 0)),
            base_cfg=cfg,
            box_height=float(spec.get("box_height", 0.0)),
        )
    else:
        raise ValueError(f"unknown study family {family!r}")
    table = capacity_study(samples)
    lines = ["param,cap,converged,iters"]
    for row in table:
        lines.append(
            f"{row.param!r},{row.cap!r},{int(row.converged)},{row.iters}"
        )
    text = "\n".join(lines) + "\n"
    if args.out in (None, "-"):
        print(text, end="")
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="stripcap",
        description="Conformal maps of slit strips, condenser capacities, potential flow",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("--input", required=True, help="problem JSON file")
        p.add_argument("--out", help="output file (default: stdout / cwd)")
        p.add_argument("--n", type=int, help="nodes per boundary component")
        p.add_argument("--r", type=float, help="ellipse aspect ratio")
        p.add_argument("--eps", type=float, help="outer stopping tolerance")
        p.add_argument("--max-iter", type=int, dest="max_iter")
        p.add_argument("--seed", type=int, help="RNG seed for studies")
        p.add_argument(
            "--emit-config",
            action="store_true",
            help="print fully-resolved numerics and exit",
        )

    p = sub.add_parser("preimage", help="compute the smooth preimage domain")
    common(p)
    p.add_argument("--progress", action="store_true", help="JSON line per iteration")
    p.set_defaults(func=cmd_preimage)

    p = sub.add_parser("capacity", help="compute the condenser capacity")
    common(p)
    p.add_argument("--exact", help="reference value, e.g. vertical:0.5")
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("flow", help="sample the uniform-flow stream function")
    common(p)
    p.add_argument("--json", action="store_true", help="JSON output instead of CSV")
    p.add_argument("--check", action="store_true", help="print flow diagnostics")
    p.set_defaults(func=cmd_flow)

    p = sub.add_parser("exact", help="evaluate an exact capacity formula")
    p.add_argument("formula", help="vertical:S or horizontal:S")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("study", help="run a capacity parameter sweep")
    common(p)
    p.set_defaults(func=cmd_study)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (StripcapError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
