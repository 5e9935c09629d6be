"""Command-line front end: run JSON-configured Monte Carlo experiments."""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import os
import sys

import numpy as np

from . import __version__, dgp, mc, presets
from .covest import KernelConfig
from .errors import ConfigError, IdentityViolation, RRRError

EXIT_OK, EXIT_CONFIG, EXIT_IDENTITY = 0, 2, 3

_BUILDERS = {
    "anderson_var1": dgp.make_anderson_var1,
    "johansen_vecm": dgp.make_johansen_vecm,
    "cy_positive": dgp.make_cy_positive_spec,
}

_EXPERIMENT_KEYS = {"id", "kind", "spec", "estimators", "n", "T_grid", "R", "seed", "kernel",
                    "preprocessing", "limit_grid_N", "xi_sign", "z_cov"}
_TOP_KEYS = {"seed", "kernel", "preprocessing", "limit_grid_N", "experiments"}


def _kernel(obj, key) -> KernelConfig:
    if not isinstance(obj, dict):
        raise ConfigError(key, "must be an object")
    unknown = set(obj) - {"kernel", "b", "c"}
    if unknown:
        raise ConfigError(f"{key}.{sorted(unknown)[0]}", "unknown key")
    try:
        return KernelConfig(**obj)
    except ConfigError as exc:
        raise ConfigError(f"{key}.{exc.key.split('.')[-1]}", str(exc).split(": ", 1)[-1]) from None


def _spec(obj, key) -> dgp.DgpSpec:
    if not isinstance(obj, dict):
        raise ConfigError(key, "must be an object")
    try:
        if "builder" in obj:
            name = obj["builder"]
            if name not in _BUILDERS:
                raise ConfigError(f"{key}.builder", f"unknown builder {name!r}; expected one of {sorted(_BUILDERS)}")
            spec = _BUILDERS[name](**obj.get("args", {}))
        else:
            spec = dgp.DgpSpec.from_dict(obj)
        return spec.validate()
    except ConfigError:
        raise
    except (RRRError, TypeError, ValueError) as exc:
        raise ConfigError(key, str(exc)) from None


def parse_config(obj: dict, seed_override: int | None = None) -> tuple[int, list]:
    """Validate a config object; return ``(master_seed, [ExperimentConfig])``.

    Errors are :class:`ConfigError` with the dotted path of the offending key.
    """
    if not isinstance(obj, dict):
        raise ConfigError("<root>", "config must be a JSON object")
    unknown = set(obj) - _TOP_KEYS
    if unknown:
        raise ConfigError(sorted(unknown)[0], "unknown key")
    master = obj.get("seed", 0) if seed_override is None else seed_override
    if not isinstance(master, int) or master < 0:
        raise ConfigError("seed", "must be a nonnegative integer")
    kernel = _kernel(obj.get("kernel", {}), "kernel")
    defaults = {k: obj[k] for k in ("preprocessing", "limit_grid_N") if k in obj}
    exps = obj.get("experiments")
    if not isinstance(exps, list) or not exps:
        raise ConfigError("experiments", "must be a non-empty list")
    out, seen = [], set()
    for i, e in enumerate(exps):
        pre = f"experiments[{i}]."
        if not isinstance(e, dict):
            raise ConfigError(pre[:-1], "must be an object")
        bad = set(e) - _EXPERIMENT_KEYS
        if bad:
            raise ConfigError(pre + sorted(bad)[0], "unknown key")
        for req in ("kind", "spec"):
            if req not in e:
                raise ConfigError(pre + req, "missing")
        eid = str(e.get("id", f"exp{i + 1}"))
        if eid in seen:
            raise ConfigError(pre + "id", f"duplicate id {eid!r}")
        seen.add(eid)
        spec = _spec(e["spec"], pre + "spec")
        seed = e.get("seed")
        if seed is None:
            seed = int(np.random.SeedSequence([master, i]).generate_state(1)[0])
        elif seed_override is not None:
            seed = int(np.random.SeedSequence([master, i, int(seed)]).generate_state(1)[0])
        kw = dict(defaults)
        kw.update({k: e[k] for k in ("estimators", "n", "T_grid", "R", "preprocessing",
                                     "limit_grid_N", "xi_sign", "z_cov") if k in e})
        try:
            cfg = mc.ExperimentConfig(
                spec=spec, seed=int(seed), experiment_id=eid, kind=e["kind"],
                kernel=_kernel(e["kernel"], pre + "kernel") if "kernel" in e else kernel, **kw)
        except (TypeError, ValueError) as exc:
            raise ConfigError(pre[:-1], str(exc)) from None
        cfg.validate(prefix=pre)
        out.append(cfg)
    return master, out


def list_presets() -> str:
    return "\n".join(f"{name:15s} {p['description']}" for name, p in presets.PRESETS.items())


def _plan(experiments) -> str:
    lines = []
    for c in experiments:
        lines.append(
            f"{c.experiment_id:22s} kind={c.kind:8s} spec={c.spec.name or 'custom':14s} "
            f"estimators={','.join(c.estimators)} T={list(c.T_grid)} R={c.R} seed={c.seed}")
    return "\n".join(lines)


def _summary_table(results) -> str:
    lines = [f"{'experiment':22s} {'estimator':11s} {'T':>6s} {'block':22s} {'statistic':28s} {'value':>12s}"]
    for res in results:
        for r in res.rows:
            if r["statistic"] in ("median_norm", "ks_coordinates", "rate_slope_se"):
                continue
            lines.append(f"{r['experiment_id']:22s} {r['estimator']:11s} {str(r['T']):>6s} "
                         f"{r['block']:22s} {r['statistic']:28s} {r['value']:12.5g}")
        for f in res.flags:
            lines.append(f"  ! {res.experiment_id}: {f}")
    return "\n".join(lines)


def run(config: dict, out_dir: str | None, *, seed: int | None = None, threads: int = 1,
        dry_run: bool = False, config_label: str = "<config>", stream=None) -> int:
    stream = stream or sys.stdout
    try:
        master, experiments = parse_config(config, seed)
    except ConfigError as exc:
        print(f"configuration error at {exc.key}: {str(exc).split(': ', 1)[-1]}", file=sys.stderr)
        return EXIT_CONFIG
    if dry_run:
        print(_plan(experiments), file=stream)
        return EXIT_OK
    if out_dir is None:
        print("configuration error at --out: an output directory is required", file=sys.stderr)
        return EXIT_CONFIG
    results, status, code = [], {}, EXIT_OK
    for cfg in experiments:
        try:
            res = mc.run_experiment(cfg, threads=threads)
            status[cfg.experiment_id] = "ok"
        except IdentityViolation as exc:
            res = exc.result
            status[cfg.experiment_id] = f"identity violation: {exc}"
            code = EXIT_IDENTITY
        results.append(res)
        if code != EXIT_OK:
            break
    for cfg in experiments:
        status.setdefault(cfg.experiment_id, "not run")
    files = mc.write_results(results, out_dir)
    manifest = {
        "config": config_label, "output_dir": os.path.abspath(out_dir),
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        "library_version": __version__, "master_seed": master,
        "experiments": status, "files": [os.path.basename(f) for f in files],
    }
    with open(os.path.join(out_dir, "manifest.json"), "w") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")
    print(_summary_table(results), file=stream)
    if code == EXIT_IDENTITY:
        print("exact identity violated; see summary.json", file=sys.stderr)
    return code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rrrint", description=__doc__)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--config", metavar="PATH", help="JSON experiment configuration")
    src.add_argument("--preset", metavar="NAME", help="built-in configuration (see --list-presets)")
    p.add_argument("--out", metavar="DIR", help="output directory")
    p.add_argument("--seed", type=int, help="override the master seed")
    p.add_argument("--threads", type=int, default=1, help="worker threads (results do not depend on it)")
    p.add_argument("--dry-run", action="store_true", help="print the experiment plan and exit")
    p.add_argument("--list-presets", action="store_true", help="list built-in presets")
    p.add_argument("--dump-config", action="store_true", help="print the resolved config JSON and exit")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.list_presets:
        print(list_presets())
        return EXIT_OK
    if args.threads < 1:
        print("configuration error at --threads: must be at least 1", file=sys.stderr)
        return EXIT_CONFIG
    if args.preset:
        try:
            config = presets.get_preset(args.preset)
        except KeyError as exc:
            print(f"configuration error at --preset: {exc.args[0]}", file=sys.stderr)
            return EXIT_CONFIG
        label = f"preset:{args.preset}"
    elif args.config:
        try:
            with open(args.config) as fh:
                config = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            print(f"configuration error at --config: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        label = args.config
    else:
        print("configuration error at --config: give --config or --preset", file=sys.stderr)
        return EXIT_CONFIG
    if args.dump_config:
        print(json.dumps(config, indent=2))
        return EXIT_OK
    return run(config, args.out, seed=args.seed, threads=args.threads,
               dry_run=args.dry_run, config_label=label)
