"""Command-line entry point.

Exit codes: 0 success, 1 validation/usage error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .config import load_config
from .dataset import load_dataset
from .errors import NumericalError, ValidationError
from .normalize import normalize_dataset
from .pipeline import build_snapshot, run_pipeline
from .rating import REPORT_FOOTER, score_agreement
from .snapshot import load_snapshot, save_snapshot, score_with_snapshot

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems are validation errors
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        sys.exit(EXIT_VALIDATION)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="relarm", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, data=True, config=True):
        if config:
            p.add_argument("--config", required=True, help="pipeline config JSON")
        if data:
            p.add_argument("--data", required=True, help="raw data CSV")
        p.add_argument("--out-dir", default=".", help="output directory")

    p_run = sub.add_parser("run", help="full pipeline: normalize, fit, cluster, assign")
    common(p_run)
    p_run.add_argument("--reference", help="reference ratings CSV for agreement scoring")
    p_run.add_argument("--seed", type=int, help="override config seed")
    p_run.add_argument("--k", type=int, help="override config k")
    p_run.add_argument("--threshold", type=float, help="override variance threshold")
    p_run.add_argument(
        "--dump-intermediates",
        action="store_true",
        help="also write normalized matrix, weights, features, centers",
    )

    p_norm = sub.add_parser("normalize", help="emit the normalized matrix as CSV")
    common(p_norm)

    p_fit = sub.add_parser("fit", help="fit the model and write a snapshot")
    common(p_fit)
    p_fit.add_argument("--seed", type=int, help="override config seed")
    p_fit.add_argument("--k", type=int, help="override config k")
    p_fit.add_argument("--threshold", type=float, help="override variance threshold")

    p_assign = sub.add_parser("assign", help="score objects against a saved snapshot")
    p_assign.add_argument("--snapshot", required=True, help="snapshot JSON from 'fit'")
    p_assign.add_argument("--data", required=True, help="raw data CSV")
    p_assign.add_argument("--out-dir", default=".", help="output directory")

    p_score = sub.add_parser("score", help="compare a rating list with reference ratings")
    p_score.add_argument("--ratings", required=True, help="rating list CSV from 'run'")
    p_score.add_argument("--reference", required=True, help="reference ratings CSV")
    p_score.add_argument("--config", help="config JSON (scale and collapse table)")
    p_score.add_argument("--out-dir", default=".", help="output directory")

    return parser


def _load_config_with_overrides(args):
    cfg = load_config(args.config)
    return cfg.with_overrides(
        seed=getattr(args, "seed", None),
        k=getattr(args, "k", None),
        variance_threshold=getattr(args, "threshold", None),
    )


def _write_normalized(out_dir: Path, normalized) -> Path:
    path = out_dir / "normalized.csv"
    io.write_matrix_csv(
        path,
        normalized.values,
        ["object"] + [s.name for s in normalized.indicators],
        row_ids=list(normalized.objects),
    )
    return path


def _cmd_run(args) -> int:
    cfg = _load_config_with_overrides(args)
    dataset = load_dataset(args.data, args.config)
    reference = io.read_reference_csv(args.reference) if args.reference else None
    outputs = run_pipeline(cfg, dataset, reference=reference)

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    io.write_ratings_csv(out_dir / "ratings.csv", outputs.ratings)
    save_snapshot(build_snapshot(cfg, dataset, outputs), out_dir / "snapshot.json")
    if outputs.agreement is not None:
        io.write_agreement_json(out_dir / "agreement.json", outputs.agreement)
        frac = outputs.agreement.fraction
        print(
            "agreement: "
            + (f"{frac:.4f}" if frac is not None else "no comparable objects")
        )
    if args.dump_intermediates:
        _write_normalized(out_dir, outputs.normalized)
        model = outputs.model
        pc_names = [f"PC{p + 1}" for p in range(model.d)]
        io.write_matrix_csv(
            out_dir / "w_matrix.csv",
            model.W,
            ["indicator"] + pc_names,
            row_ids=[s.name for s in cfg.indicators],
        )
        io.write_matrix_csv(out_dir / "lambda.csv", model.Lambda.reshape(1, -1), pc_names)
        io.write_matrix_csv(
            out_dir / "features.csv",
            outputs.features.values,
            ["object"] + pc_names,
            row_ids=list(outputs.features.objects),
        )
        io.write_matrix_csv(
            out_dir / "centers.csv",
            outputs.clusters.centers,
            ["cluster"] + pc_names,
            row_ids=[str(q + 1) for q in range(outputs.clusters.k)],
        )
    print(f"rated {len(outputs.ratings.per_object)} objects into {cfg.k} categories")
    print(REPORT_FOOTER)
    return EXIT_OK


def _cmd_normalize(args) -> int:
    cfg = _load_config_with_overrides(args)
    dataset = load_dataset(args.data, args.config)
    if tuple(s.name for s in dataset.indicators) != tuple(
        s.name for s in cfg.indicators
    ):
        raise ValidationError("dataset indicators do not match the configuration")
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = _write_normalized(out_dir, normalize_dataset(dataset))
    print(f"wrote {path}")
    return EXIT_OK


def _cmd_fit(args) -> int:
    cfg = _load_config_with_overrides(args)
    dataset = load_dataset(args.data, args.config)
    outputs = run_pipeline(cfg, dataset)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "snapshot.json"
    save_snapshot(build_snapshot(cfg, dataset, outputs), path)
    print(f"wrote {path} (d={outputs.model.d}, k={cfg.k})")
    return EXIT_OK


def _cmd_assign(args) -> int:
    snapshot = load_snapshot(args.snapshot)
    import json
    import tempfile

    # reuse the dataset loader with the snapshot's indicator declarations
    with tempfile.NamedTemporaryFile(
        "w", suffix=".json", delete=False, encoding="utf-8"
    ) as tmp:
        from .config import config_to_dict

        json.dump(config_to_dict(snapshot.config), tmp)
        spec_path = tmp.name
    dataset = load_dataset(args.data, spec_path)
    result = score_with_snapshot(snapshot, dataset)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    io.write_ratings_csv(out_dir / "ratings.csv", result)
    print(f"wrote {out_dir / 'ratings.csv'}")
    print(REPORT_FOOTER)
    return EXIT_OK


def _cmd_score(args) -> int:
    result = io.read_ratings_csv(args.ratings)
    reference = io.read_reference_csv(args.reference)
    scale = None
    collapse = None
    if args.config:
        cfg = load_config(args.config)
        scale = cfg.scale
        collapse = cfg.collapse_table
    missing = sorted(set(reference) - {r.object_id for r in result.per_object})
    for obj in missing:
        print(f"warning: reference object {obj!r} absent from results; skipped",
              file=sys.stderr)
    report = score_agreement(result, reference, scale=scale, collapse_table=collapse)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    io.write_agreement_json(out_dir / "agreement.json", report)
    if report.fraction is None:
        print("no comparable objects")
    else:
        print(f"agreement: {report.matched}/{report.compared} = {report.fraction:.4f}")
    return EXIT_OK


_COMMANDS = {
    "run": _cmd_run,
    "normalize": _cmd_normalize,
    "fit": _cmd_fit,
    "assign": _cmd_assign,
    "score": _cmd_score,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
