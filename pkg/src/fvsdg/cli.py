"""Command-line entry point.

    fvsdg run --case sod --K 3 --N 400 --cfl 0.05 --limiter istvb --wis 1.0 \
              --wl2 0.0 --flux sw --out results/
    fvsdg convergence --case euler1d-smooth --meshes 10,20,40,80,160 --out tbl/
    fvsdg cases

Settings may also come from a UTF-8 `key = value` config file (--config);
command-line flags override file entries. Exit codes: 0 success, 2 divergence,
3 configuration error.
"""

import argparse
import os
import sys

import numpy as np

from .cases import case_registry
from .harness import RunConfig, convergence_study, format_convergence_text, run
from .integrators import DivergenceError

EXIT_OK = 0
EXIT_DIVERGED = 2
EXIT_CONFIG = 3

_BOOL = {"true": True, "1": True, "yes": True, "false": False, "0": False, "no": False}


def parse_config_file(path):
    out = {}
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"bad config line (need key = value): {line!r}")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


def _parse_mesh(text):
    if "x" in text:
        nx, ny = text.lower().split("x")
        return (int(nx), int(ny))
    return int(text)


def _add_common(p):
    p.add_argument("--config", help="key = value settings file")
    p.add_argument("--case", help="case id from the registry")
    p.add_argument("--K", type=int, help="polynomial degree")
    p.add_argument("--N", type=_parse_mesh, help="cells: 400 or 40x40")
    p.add_argument("--cfl", type=float)
    p.add_argument("--tend", type=float, dest="t_end")
    p.add_argument("--flux", help="sw|lf-local|lf-global|vanleer|ausm|scalar-sw|scalar-llf")
    p.add_argument("--flux-delta", type=float, default=None, dest="flux_delta")
    p.add_argument("--llf-mode", choices=("local", "global"), dest="llf_mode")
    p.add_argument("--llf-alpha", type=float, dest="llf_alpha")
    p.add_argument("--integrator", help="tvdrk3|rk4|ssprk104")
    p.add_argument("--limiter", help="none|classical|istvb|isl2tvb")
    p.add_argument("--wis", type=float, dest="w_is")
    p.add_argument("--wl2", type=float, dest="w_l2")
    p.add_argument("--tvbm", type=float, dest="tvb_m")
    p.add_argument("--indicator", help="tvb|kxrcf|always")
    p.add_argument("--characteristic", dest="characteristic", default=None,
                   action="store_true")
    p.add_argument("--componentwise", dest="characteristic", action="store_false")
    p.add_argument("--freeze", help="arithmetic|roe")
    p.add_argument("--out", help="output directory")
    p.add_argument("--threads", type=int, default=None,
                   help="accepted for compatibility; execution is deterministic")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--log-troubled", action="store_true", dest="log_troubled",
                   default=None)


def build_run_config(args):
    values = {}
    if args.config:
        raw = parse_config_file(args.config)
        for key, text in raw.items():
            if key in ("K", "threads", "seed"):
                values[key] = int(text)
            elif key in ("cfl", "t_end", "tend", "w_is", "wis", "w_l2", "wl2",
                         "tvb_m", "tvbm", "flux_delta", "llf_alpha", "dt_max"):
                values[{"tend": "t_end", "wis": "w_is", "wl2": "w_l2",
                        "tvbm": "tvb_m"}.get(key, key)] = float(text)
            elif key in ("characteristic", "log_troubled"):
                values[key] = _BOOL[text.lower()]
            elif key == "N":
                values["N"] = _parse_mesh(text)
            else:
                values[key] = text
    for key in ("case", "K", "N", "cfl", "t_end", "flux", "flux_delta", "llf_mode",
                "llf_alpha", "integrator", "limiter", "w_is", "w_l2", "tvb_m",
                "indicator", "characteristic", "freeze", "out", "threads", "seed",
                "log_troubled"):
        v = getattr(args, key, None)
        if v is not None:
            values[key] = v
    if values.get("threads") is None:
        env = os.environ.get("FVSDG_THREADS")
        if env:
            values["threads"] = int(env)
    values.setdefault("threads", 1)
    values.setdefault("seed", 0)
    if values.get("flux_delta") is None:
        values["flux_delta"] = 0.0
    if values.get("log_troubled") is None:
        values["log_troubled"] = bool(values.get("out"))
    allowed = set(RunConfig.__dataclass_fields__)
    values = {k: v for k, v in values.items() if k in allowed}
    return RunConfig(**values)


def main(argv=None):
    parser = argparse.ArgumentParser(prog="fvsdg", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one case")
    _add_common(p_run)

    p_conv = sub.add_parser("convergence", help="mesh-refinement study")
    _add_common(p_conv)
    p_conv.add_argument("--meshes", required=True,
                        help="comma-separated cell counts, e.g. 10,20,40,80")

    sub.add_parser("cases", help="list registered cases")

    args = parser.parse_args(argv)

    if args.command == "cases":
        for name, spec in sorted(case_registry().items()):
            note = f"  [{spec.notes}]" if spec.notes else ""
            print(f"{name:>18}  {spec.description}{note}")
        return EXIT_OK

    try:
        cfg = build_run_config(args)
        if args.command == "run":
            result = run(cfg)
        else:
            meshes = [_parse_mesh(s) for s in args.meshes.split(",")]
            table = convergence_study(cfg, meshes)
            print(format_convergence_text(table))
            return EXIT_OK
    except DivergenceError as exc:
        print(f"error: diverged: {exc}", file=sys.stderr)
        return EXIT_DIVERGED
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    rep = result.report
    print(
        f"case={cfg.case} t={result.field.time:.6g} steps={rep.steps} "
        f"wall={rep.wall_seconds:.2f}s"
    )
    if rep.troubled_per_step:
        print(
            f"troubled cells/step: mean={np.mean(rep.troubled_per_step):.1f} "
            f"max={max(rep.troubled_per_step)}"
        )
    if result.errors is not None:
        for norm in ("L1", "L2", "Linf"):
            vals = " ".join(f"{v:.4E}" for v in result.errors[norm])
            print(f"{norm:>5}: {vals}")
    if result.outputs:
        print("wrote: " + ", ".join(result.outputs))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
