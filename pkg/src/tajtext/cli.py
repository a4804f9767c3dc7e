"""Batch command-line frontend.

Subcommands::

    tajtext process  --preset default --input in.txt --output out.jsonl
    tajtext metric   --metric wer --ref ref.txt --hyp hyp.txt
    tajtext resources validate --preset sentiment

``process`` reads one document per line and emits one JSON record per
line; identical inputs and resources produce byte-identical output. The
resource root resolves from --resource-root, then $TAJTEXT_RESOURCES,
then the packaged fixture data; --config may remap individual resource
files ("name = path" lines).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .core import PipelineValidationError, TajTextError, doc_to_json
from .metrics import corpus_bleu, levenshtein, precision_recall_f1, wer
from .presets import PRESET_NAMES, build_pipeline
from .resources import DEFAULT_FILES, MissingResourceError, ResourceBundle

METRIC_NAMES = ("levenshtein", "wer", "bleu", "prf1")


def _read_config(path: Path) -> dict[str, str]:
    """Parse "name = path" lines; '#' starts a comment."""
    overrides: dict[str, str] = {}
    base = path.parent
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise TajTextError(f"{path}:{lineno}: expected 'name = path'")
        name, _, value = line.partition("=")
        name = name.strip()
        if name not in DEFAULT_FILES:
            raise TajTextError(
                f"{path}:{lineno}: unknown resource {name!r}; "
                f"known: {', '.join(sorted(DEFAULT_FILES))}"
            )
        candidate = Path(value.strip())
        overrides[name] = str(candidate if candidate.is_absolute() else base / candidate)
    return overrides


def _open_input(path: str | None):
    if path in (None, "-"):
        return sys.stdin
    return open(path, encoding="utf-8")


def _open_output(path: str | None):
    if path in (None, "-"):
        return sys.stdout
    return open(path, "w", encoding="utf-8")


def _load_bundle(args) -> ResourceBundle:
    overrides = _read_config(Path(args.config)) if args.config else None
    root = Path(args.resource_root) if args.resource_root else None
    return ResourceBundle.load(root, overrides)


def _cmd_process(args) -> int:
    try:
        bundle = _load_bundle(args)
        pipeline = build_pipeline(args.preset, bundle)
    except (MissingResourceError, PipelineValidationError, TajTextError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    infile = _open_input(args.input)
    outfile = _open_output(args.output)
    try:
        for lineno, line in enumerate(infile, 1):
            line = line.rstrip("\n")
            try:
                doc = pipeline.run(line)
            except TajTextError as exc:
                print(f"line {lineno}: {exc}", file=sys.stderr)
                continue
            outfile.write(doc_to_json(doc) + "\n")
    finally:
        if infile is not sys.stdin:
            infile.close()
        if outfile is not sys.stdout:
            outfile.flush()
            outfile.close()
        else:
            outfile.flush()
    return 0


def _read_lines(path: str) -> list[str]:
    try:
        with open(path, encoding="utf-8") as fh:
            return [line.rstrip("\n") for line in fh]
    except OSError as exc:
        raise TajTextError(f"cannot read {path}: {exc}") from exc


def _cmd_metric(args) -> int:
    try:
        refs = _read_lines(args.ref)
        hyps = _read_lines(args.hyp)
        if len(refs) != len(hyps):
            raise TajTextError(
                f"line count mismatch: {len(refs)} reference vs {len(hyps)} hypothesis"
            )
        if args.metric == "levenshtein":
            total = sum(levenshtein(r, h) for r, h in zip(refs, hyps))
            print(f"{total:.4f}")
        elif args.metric == "wer":
            distance = sum(levenshtein(r.split(), h.split()) for r, h in zip(refs, hyps))
            ref_tokens = sum(len(r.split()) for r in refs)
            if ref_tokens == 0:
                raise TajTextError("reference corpus has no tokens")
            print(f"{distance / ref_tokens:.4f}")
        elif args.metric == "bleu":
            pairs = [([r.split()], h.split()) for r, h in zip(refs, hyps)]
            score = corpus_bleu(pairs, max_n=args.max_n, smoothing=args.smoothing)
            print(f"{score:.4f}")
        elif args.metric == "prf1":
            if args.positive is None:
                raise TajTextError("--positive is required for prf1")
            p, r, f1 = precision_recall_f1(refs, hyps, args.positive)
            print(f"{p:.4f} {r:.4f} {f1:.4f}")
    except TajTextError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def _cmd_resources_validate(args) -> int:
    status = 0
    presets = [args.preset] if args.preset else list(PRESET_NAMES)
    for preset in presets:
        try:
            bundle = _load_bundle(args)
            pipeline = build_pipeline(preset, bundle)
            findings = pipeline.validate()
        except (MissingResourceError, TajTextError) as exc:
            print(f"{preset}: ERROR {exc}")
            status = 2
            continue
        if findings:
            print(f"{preset}: INVALID {'; '.join(map(str, findings))}")
            status = 2
        else:
            print(f"{preset}: ok ({' -> '.join(pipeline.component_names())})")
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tajtext", description="Batch text processing for Cyrillic-script Tajik"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_process = sub.add_parser("process", help="run a preset pipeline over a line stream")
    p_process.add_argument("--preset", default="default", choices=PRESET_NAMES)
    p_process.add_argument("--config", help="resource config file (name = path lines)")
    p_process.add_argument("--input", help="input file, one document per line (default stdin)")
    p_process.add_argument("--output", help="output file, one JSON record per line "
                                            "(default stdout)")
    p_process.add_argument("--resource-root", help="directory with resource files")
    p_process.set_defaults(func=_cmd_process)

    p_metric = sub.add_parser("metric", help="compute a metric between two files")
    p_metric.add_argument("--metric", required=True, choices=METRIC_NAMES)
    p_metric.add_argument("--ref", required=True, help="reference file")
    p_metric.add_argument("--hyp", required=True, help="hypothesis file")
    p_metric.add_argument("--max-n", type=int, default=4, help="BLEU n-gram order")
    p_metric.add_argument("--smoothing", action="store_true", help="BLEU add-one smoothing")
    p_metric.add_argument("--positive", help="positive class label for prf1")
    p_metric.set_defaults(func=_cmd_metric)

    p_resources = sub.add_parser("resources", help="resource utilities")
    res_sub = p_resources.add_subparsers(dest="resources_command", required=True)
    p_validate = res_sub.add_parser("validate", help="load resources and validate presets")
    p_validate.add_argument("--preset", choices=PRESET_NAMES,
                            help="validate one preset (default: all)")
    p_validate.add_argument("--config")
    p_validate.add_argument("--resource-root")
    p_validate.set_defaults(func=_cmd_resources_validate)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
