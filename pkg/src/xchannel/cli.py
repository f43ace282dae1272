"""Command-line entry point: region sweeps, slope estimation, self-verification.

Configuration precedence is built-in defaults, then a JSON config file
(``--config``), then explicit command-line flags.  The built-in defaults
reproduce the reference comparison setup: cross gains (0.8, 0.2), unit
noise, receive SNRs 0/10/50 dB for regions and a 30-70 dB fit window for
slopes.

Exit codes: 0 success, 1 verification-suite failure, 2 configuration error,
3 numerical failure (degenerate covariance at some parameter point).
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from . import __version__, gauss, model, regions, scaling, selfcheck

EXIT_OK = 0
EXIT_SUITE_FAILURE = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

REGION_KINDS = {
    "cogx": regions.ChannelKind.COGNITIVE_X,
    "cogic": regions.ChannelKind.COGNITIVE_INTERFERENCE,
    "bc": regions.ChannelKind.BC_OUTER_DUAL_MAC,
}
SLOPE_KINDS = {
    "cogx": "cognitive_x",
    "cogic": "cognitive_interference",
    "p2p": "point_to_point",
}
DEFAULT_SLOPE_POLICY = {"cogx": "fixed_p22", "cogic": "free", "p2p": "fixed_p22"}

DEFAULT_REGION_SNR_DB = (0.0, 10.0, 50.0)


@dataclasses.dataclass
class RunConfig:
    command: str = "region"
    alpha12: float = 0.8
    alpha21: float = 0.2
    n1: float = 1.0
    n2: float = 1.0
    p: float | None = None
    snr_db: tuple[float, ...] | None = None
    kinds: tuple[str, ...] | None = None
    grid: int = 33
    beta: tuple[float, ...] | None = None
    out: str = "."
    format: str = "csv"
    seed: int = selfcheck.DEFAULT_SEED
    draws: int = selfcheck.DEFAULT_DRAWS
    policy: str | None = None
    joint_gamma_search: bool = False


class ConfigError(ValueError):
    pass


def _parse_list(text: str, caster) -> tuple:
    try:
        return tuple(caster(tok) for tok in text.split(",") if tok.strip() != "")
    except ValueError as exc:
        raise ConfigError(f"could not parse list {text!r}: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xchannel",
        description="Rate-region frontiers and multiplexing-gain estimates "
        "for Gaussian X-channels with one-sided transmitter side-information.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", type=str, default=None, help="JSON config file")
        p.add_argument("--alpha12", type=float, default=None, help="cross gain Tx1 -> Rx2")
        p.add_argument("--alpha21", type=float, default=None, help="cross gain Tx2 -> Rx1")
        p.add_argument("--n1", type=float, default=None, help="noise variance at Rx1")
        p.add_argument("--n2", type=float, default=None, help="noise variance at Rx2")
        p.add_argument("--p", type=float, default=None,
                       help="fixed per-Tx power (overrides the SNR-derived power)")
        p.add_argument("--snr-db", type=str, default=None, help="comma list of SNRs in dB")
        p.add_argument("--kinds", type=str, default=None, help="comma list of channel kinds")
        p.add_argument("--grid", type=int, default=None, help="points per power-split axis")
        p.add_argument("--beta", type=str, default=None, help="comma list of beta values")
        p.add_argument("--out", type=str, default=None, help="output directory")
        p.add_argument("--format", type=str, default=None, choices=("csv", "json"))
        p.add_argument("--seed", type=int, default=None, help="seed for randomized checks")
        p.add_argument("--draws", type=int, default=None, help="random draw count")

    p_region = sub.add_parser("region", help="trace achievable-region frontiers")
    add_common(p_region)
    p_region.add_argument("--joint-gamma-search", action="store_true", default=None,
                          help="locally optimize both DPC coefficients per grid point")

    p_slope = sub.add_parser("slope", help="estimate multiplexing gains")
    add_common(p_slope)
    p_slope.add_argument("--policy", type=str, default=None,
                         choices=("fixed_p22", "free"), help="power policy override")
    p_slope.add_argument("--kind", type=str, default=None,
                         help="single channel kind (alias for --kinds)")

    p_verify = sub.add_parser("verify", help="run the seeded self-verification suites")
    add_common(p_verify)
    return parser


def build_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command)

    config_path = getattr(args, "config", None)
    if config_path:
        try:
            loaded = json.loads(Path(config_path).read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{config_path}:{exc.lineno}: {exc.msg}") from None
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from None
        if not isinstance(loaded, dict):
            raise ConfigError(f"{config_path}: top-level JSON object expected")
        for key, value in loaded.items():
            if not hasattr(cfg, key) or key == "command":
                raise ConfigError(f"{config_path}: unknown config key {key!r}")
            if key in ("snr_db", "kinds", "beta") and value is not None:
                value = tuple(value)
            setattr(cfg, key, value)

    for key in ("alpha12", "alpha21", "n1", "n2", "p", "grid", "out",
                "format", "seed", "draws", "policy", "joint_gamma_search"):
        val = getattr(args, key, None)
        if val is not None:
            setattr(cfg, key, val)
    if getattr(args, "snr_db", None) is not None:
        cfg.snr_db = _parse_list(args.snr_db, float)
    if getattr(args, "kinds", None) is not None:
        cfg.kinds = _parse_list(args.kinds, str)
    if getattr(args, "kind", None) is not None:
        cfg.kinds = (args.kind,)
    if getattr(args, "beta", None) is not None:
        cfg.beta = _parse_list(args.beta, float)

    _validate_config(cfg)
    return cfg


def _validate_config(cfg: RunConfig) -> None:
    if cfg.format not in ("csv", "json"):
        raise ConfigError(f"format must be csv or json, got {cfg.format!r}")
    if not 0 <= int(cfg.seed) < 2**64:
        raise ConfigError(f"seed must fit in an unsigned 64-bit integer, got {cfg.seed}")
    if cfg.draws < 1:
        raise ConfigError(f"draws must be positive, got {cfg.draws}")
    if cfg.grid < 2:
        raise ConfigError(f"grid resolution must be at least 2, got {cfg.grid}")
    if cfg.n1 <= 0 or cfg.n2 <= 0:
        raise ConfigError(f"noise variances must be positive, got n1={cfg.n1}, n2={cfg.n2}")
    if cfg.p is not None and cfg.p < 0:
        raise ConfigError(f"power must be nonnegative, got {cfg.p}")
    if cfg.beta is not None:
        for b in cfg.beta:
            if not 0.0 < b <= 1.0:
                raise ConfigError(f"beta out of range (0, 1]: {b}")
    valid_kinds = REGION_KINDS if cfg.command == "region" else SLOPE_KINDS
    if cfg.command in ("region", "slope") and cfg.kinds is not None:
        for kind in cfg.kinds:
            if kind not in valid_kinds:
                raise ConfigError(
                    f"unknown kind {kind!r} for {cfg.command}; "
                    f"expected one of {sorted(valid_kinds)}"
                )


def _sweep_grid(cfg: RunConfig) -> regions.SweepGrid:
    return regions.SweepGrid(
        n_power_split=cfg.grid,
        n_beta=max(2, (cfg.grid + 1) // 2),
        explicit_betas=cfg.beta,
    )


def _format_snr(snr_db: float) -> str:
    return str(int(snr_db)) if float(snr_db).is_integer() else f"{snr_db:g}"


def cmd_region(cfg: RunConfig) -> int:
    out_dir = Path(cfg.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    kinds = cfg.kinds or tuple(REGION_KINDS)
    snr_list = cfg.snr_db or DEFAULT_REGION_SNR_DB
    grid = _sweep_grid(cfg)

    rows = []
    for snr_db in snr_list:
        power = cfg.p if cfg.p is not None else model.snr_to_power(snr_db, cfg.n1)
        params = model.ChannelParams(
            alpha12=cfg.alpha12, alpha21=cfg.alpha21,
            n1=cfg.n1, n2=cfg.n2, p1=power, p2=power,
        )
        for kind in kinds:
            if kind == "cogx":
                frontier = regions.sweep_cognitive_x(
                    params, grid, joint_gamma_search=cfg.joint_gamma_search
                )
            elif kind == "cogic":
                frontier = regions.sweep_cognitive_ic(
                    params, grid, joint_gamma_search=cfg.joint_gamma_search
                )
            else:
                frontier = regions.bc_outer_dual_mac(params, 2.0 * power, grid)
            name = f"frontier_{kind}_{_format_snr(snr_db)}.{cfg.format}"
            path = out_dir / name
            if cfg.format == "csv":
                regions.write_frontier_csv(frontier, path)
            else:
                regions.write_frontier_json(
                    frontier, path,
                    meta={"snr_db": snr_db, "power": power,
                          "alpha12": cfg.alpha12, "alpha21": cfg.alpha21,
                          "n1": cfg.n1, "n2": cfg.n2},
                )
            r1m, _ = frontier.max_r1_point
            _, r2m = frontier.max_r2_point
            rows.append((kind, snr_db, len(frontier.points),
                         r1m, r2m, frontier.max_sum_rate, str(path)))
        coop = regions.cooperative_outer(params, 2.0 * power)
        rows.append(("coop", snr_db, 1, coop, coop, coop, "-"))

    print(f"{'kind':6s} {'snr_db':>7s} {'points':>7s} {'max_r1':>10s} "
          f"{'max_r2':>10s} {'max_sum':>10s}  file")
    for kind, snr_db, npts, r1m, r2m, ms, path in rows:
        print(f"{kind:6s} {snr_db:7.6g} {npts:7d} {r1m:10.4f} {r2m:10.4f} {ms:10.4f}  {path}")
    return EXIT_OK


def cmd_slope(cfg: RunConfig) -> int:
    out_dir = Path(cfg.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    kinds = cfg.kinds or tuple(SLOPE_KINDS)
    snr_list = cfg.snr_db or scaling.DEFAULT_SNR_GRID_DB
    beta = cfg.beta[0] if cfg.beta else scaling.DEFAULT_BETA
    template = model.ChannelParams(
        alpha12=cfg.alpha12, alpha21=cfg.alpha21, n1=cfg.n1, n2=cfg.n2
    )

    print(f"{'kind':6s} {'policy':10s} {'slope':>8s} {'intercept':>10s} {'residual':>9s}  file")
    for kind in kinds:
        policy = cfg.policy or DEFAULT_SLOPE_POLICY[kind]
        estimate = scaling.estimate_slope(
            SLOPE_KINDS[kind], template, tuple(snr_list),
            power_policy=policy, beta=beta, grid=_sweep_grid(cfg),
        )
        payload = estimate.as_dict()
        payload["beta"] = beta
        payload["reference_lines"] = [
            {"label": label, "slope": slope}
            for label, slope in scaling.reference_lines(1)
        ]
        path = out_dir / f"slope_{kind}.json"
        path.write_text(json.dumps(payload, indent=2) + "\n")
        print(f"{kind:6s} {policy:10s} {estimate.slope:8.4f} "
              f"{estimate.intercept:10.4f} {estimate.residual:9.4f}  {path}")
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    out_dir = Path(cfg.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    results = selfcheck.run_all(cfg.seed, cfg.draws)
    for res in results:
        print(res.line())
    all_passed = all(r.passed for r in results)
    report = {
        "seed": cfg.seed,
        "draws": cfg.draws,
        "passed": all_passed,
        "suites": [dataclasses.asdict(r) for r in results],
    }
    path = out_dir / "verify_report.json"
    path.write_text(json.dumps(report, indent=2) + "\n")
    print(f"report: {path}")
    if not all_passed:
        for res in results:
            if not res.passed:
                print(f"failing suite {res.name!r}; reproduce with: {res.detail}",
                      file=sys.stderr)
        return EXIT_SUITE_FAILURE
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = build_config(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        if cfg.command == "region":
            return cmd_region(cfg)
        if cfg.command == "slope":
            return cmd_slope(cfg)
        return cmd_verify(cfg)
    except (model.ParameterError, regions.EmptyFrontierError, ConfigError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except gauss.SingularCovarianceError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
