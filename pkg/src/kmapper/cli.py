"""Command-line front end.

Subcommands: ``analyze`` (one map over the full history), ``windows``
(sliding-window maps with change alarms), ``scatter`` (pair plot and
relation class), ``rules`` (fuzzy rule induction), ``fcm`` (run a
cognitive-map model). Every run writes its artifacts plus a
``manifest.json`` naming the files and the exact settings used into one
output directory, so repeated runs are byte-identical.

Exit codes: 0 success, 1 error, 2 success with at least one alarm.
Settings resolve as flags > config file > ``KMAPPER_OUT`` environment
variable (output dir only) > defaults.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .analysis import (
    features_text,
    static_analysis,
    time_domain_analysis,
    timeline_json,
    timeline_text,
)
from .dataset import Role, WindowSpec, load_roles, load_table
from .errors import KmapperError, MissingInput
from .fcm import load_model, parse_state, run, trajectory_csv
from .fuzzy import build_partitions, induce_rules, rules_json, rules_text
from .kmap import dsm_csv, export_dot, export_json
from .relation import RelationThresholds, classify_relation, scatter_csv, scatter_points, scatter_svg

DEFAULT_OUT = "kmapper_out"
MANIFEST_SCHEMA = "kmapper-manifest-1"
_DEF_TH = RelationThresholds()
_SETTING_KEYS = frozenset(
    {"input", "out", "t_strong", "t_weak", "t_nmi", "window", "stride", "k", "seed"}
)


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved settings for one command invocation."""

    input: str | None
    out: str
    t_strong: float
    t_weak: float
    t_nmi: float
    window: int | None
    stride: int
    k: int
    seed: int | None
    roles: dict[str, Role]

    @property
    def thresholds(self) -> RelationThresholds:
        return RelationThresholds(self.t_strong, self.t_weak, self.t_nmi)


def _load_config_file(path: str) -> tuple[dict[str, str], dict[str, Role]]:
    """Split a key=value sidecar into run settings and variable roles."""
    text = Path(path).read_text(encoding="utf-8")
    roles = load_roles(text)
    settings: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#") or "=" not in line:
            continue
        key, _, value = line.partition("=")
        key = key.strip()
        if key.startswith("role."):
            continue
        if key not in _SETTING_KEYS:
            raise ValueError(f"{path}:{lineno}: unknown setting '{key}'")
        settings[key] = value.strip()
    return settings, roles


def resolve_config(args: argparse.Namespace) -> RunConfig:
    settings: dict[str, str] = {}
    roles: dict[str, Role] = {}
    if getattr(args, "config", None):
        settings, roles = _load_config_file(args.config)

    def pick(key: str, default, convert):
        flag = getattr(args, key, None)
        if flag is not None:
            return flag
        if key in settings:
            try:
                return convert(settings[key])
            except ValueError:
                raise ValueError(
                    f"config setting '{key}': cannot parse '{settings[key]}'"
                ) from None
        return default

    out = pick("out", None, str)
    if out is None:
        out = os.environ.get("KMAPPER_OUT") or DEFAULT_OUT
    return RunConfig(
        input=pick("input", None, str),
        out=out,
        t_strong=pick("t_strong", _DEF_TH.t_strong, float),
        t_weak=pick("t_weak", _DEF_TH.t_weak, float),
        t_nmi=pick("t_nmi", _DEF_TH.t_complex_nmi, float),
        window=pick("window", None, int),
        stride=pick("stride", 1, int),
        k=pick("k", 3, int),
        seed=pick("seed", None, int),
        roles=roles,
    )


def _load_input_table(cfg: RunConfig):
    if cfg.input is None:
        raise MissingInput("no input table (use --input or config 'input=')")
    table = load_table(Path(cfg.input).read_text(encoding="utf-8"))
    return table.with_roles(cfg.roles) if cfg.roles else table


def _config_doc(cfg: RunConfig) -> dict:
    return {
        "input": cfg.input,
        "out": cfg.out,
        "t_strong": cfg.t_strong,
        "t_weak": cfg.t_weak,
        "t_nmi": cfg.t_nmi,
        "window": cfg.window,
        "stride": cfg.stride,
        "k": cfg.k,
        "seed": cfg.seed,
        "roles": {name: role.value for name, role in sorted(cfg.roles.items())},
    }


def _write_outputs(command: str, cfg: RunConfig, args_doc: dict,
                   texts: dict[str, str]) -> None:
    root = Path(cfg.out)
    root.mkdir(parents=True, exist_ok=True)
    for name, text in texts.items():
        (root / name).write_text(text, encoding="utf-8", newline="")
    manifest = {
        "schema": MANIFEST_SCHEMA,
        "command": command,
        "config": _config_doc(cfg),
        "args": args_doc,
        "files": sorted(texts),
    }
    (root / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n",
        encoding="utf-8", newline="",
    )


def _safe(name: str) -> str:
    return "".join(c if c.isalnum() or c in "_.-" else "_" for c in name)


def cmd_analyze(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    table = _load_input_table(cfg)
    kmap, feats = static_analysis(table, cfg.thresholds)
    _write_outputs("analyze", cfg, {}, {
        "map.json": export_json(kmap),
        "map.dot": export_dot(kmap),
        "dsm.csv": dsm_csv(kmap),
        "features.txt": features_text(feats),
    })
    sys.stdout.write(features_text(feats))
    return 0


def cmd_windows(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    if cfg.window is None:
        raise MissingInput("no window size (use --window or config 'window=')")
    table = _load_input_table(cfg)
    timeline = time_domain_analysis(table, WindowSpec(cfg.window, cfg.stride),
                                    cfg.thresholds)
    texts = {"timeline.json": timeline_json(timeline)}
    for i, w in enumerate(timeline.windows):
        texts[f"map_w{i:03d}.json"] = export_json(w.kmap)
    _write_outputs("windows", cfg, {}, texts)
    sys.stdout.write(timeline_text(timeline))
    return 2 if timeline.alarms else 0


def cmd_scatter(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    table = _load_input_table(cfg)
    x, y = args.var_x, args.var_y
    rel = classify_relation(table.column(x), table.column(y), cfg.thresholds, x, y)
    points = scatter_points(table, x, y)
    _write_outputs("scatter", cfg, {"var_x": x, "var_y": y}, {
        f"scatter_{_safe(x)}_{_safe(y)}.svg": scatter_svg(points, x, y),
        f"scatter_{_safe(x)}_{_safe(y)}.csv": scatter_csv(points, x, y),
    })
    print(f"{x} vs {y}: {rel.rel_class.value}")
    return 0


def cmd_rules(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    table = _load_input_table(cfg)
    antecedents = list(args.antecedents)
    consequent = args.consequent
    partitions = {
        name: build_partitions(table, name, cfg.k)
        for name in dict.fromkeys([*antecedents, consequent])
    }
    rb = induce_rules(table, partitions, antecedents, consequent)
    _write_outputs("rules", cfg,
                   {"antecedents": antecedents, "consequent": consequent},
                   {"rules.txt": rules_text(rb), "rules.json": rules_json(rb)})
    sys.stdout.write(rules_text(rb))
    return 0


def cmd_fcm(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    model = load_model(Path(args.model).read_text(encoding="utf-8"))
    initial = parse_state(args.state, len(model.concepts))
    result = run(model, initial, max_iters=args.iters, eps=args.eps)
    _write_outputs("fcm", cfg,
                   {"model": args.model, "state": args.state,
                    "iters": args.iters, "eps": args.eps},
                   {"trajectory.csv": trajectory_csv(result.trajectory,
                                                     model.concepts)})
    final = ",".join(repr(float(v)) for v in result.final)
    print(f"{result.verdict.value} after {len(result.trajectory) - 1} steps: {final}")
    return 0


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; 2 means "alarms" here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="kmapper",
        description="Mine dependency maps from historical time-series tables.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def common(sp: argparse.ArgumentParser, with_table: bool = True) -> None:
        if with_table:
            sp.add_argument("--input", help="CSV table, first column = time labels")
        sp.add_argument("--config",
                        help="key=value settings file (roles, thresholds, ...)")
        sp.add_argument("--out",
                        help="output directory (default $KMAPPER_OUT or kmapper_out)")
        sp.add_argument("--seed", type=int, help="seed recorded in the manifest")
        if with_table:
            sp.add_argument("--t-strong", dest="t_strong", type=float,
                            help="strong-relation threshold on |m|")
            sp.add_argument("--t-weak", dest="t_weak", type=float,
                            help="weak-relation threshold on |m|")
            sp.add_argument("--t-nmi", dest="t_nmi", type=float,
                            help="complex-relation threshold on mutual information")
            sp.add_argument("--window", type=int, help="sliding-window size")
            sp.add_argument("--stride", type=int, help="sliding-window stride")
            sp.add_argument("--k", type=int, help="fuzzy sets per variable")

    p = sub.add_parser("analyze", help="one map over the full history")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("windows", help="per-window maps with change alarms")
    common(p)
    p.set_defaults(func=cmd_windows)

    p = sub.add_parser("scatter", help="pair scatter plot and relation class")
    common(p)
    p.add_argument("var_x")
    p.add_argument("var_y")
    p.set_defaults(func=cmd_scatter)

    p = sub.add_parser("rules", help="induce fuzzy rules from the table")
    common(p)
    p.add_argument("antecedents", nargs="+", metavar="antecedent")
    p.add_argument("--consequent", required=True,
                   help="variable the rules conclude about")
    p.set_defaults(func=cmd_rules)

    p = sub.add_parser("fcm", help="run a cognitive-map model to rest")
    common(p, with_table=False)
    p.add_argument("--model", required=True, help="model JSON file")
    p.add_argument("--state", required=True,
                   help="initial activations, comma separated")
    p.add_argument("--iters", type=int, default=1000, help="iteration budget")
    p.add_argument("--eps", type=float, default=1e-6, help="rest tolerance")
    p.set_defaults(func=cmd_fcm)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except KmapperError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
