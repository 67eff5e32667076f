"""Evaluate a prompt dataset with a configurable stub adapter.

Mainly a wiring check for generated datasets; real model adapters plug in
through the same interface programmatically.
"""

from __future__ import annotations

import argparse
import sys

from .adapters import ConstantAdapter
from .data import read_prompt_records
from .evaluate import evaluate
from .scoring import label_words


def _parse_logit(text: str) -> tuple[str, float]:
    word, _, value = text.partition("=")
    if not _:
        raise argparse.ArgumentTypeError(f"expected WORD=VALUE, got {text!r}")
    return word, float(value)


def build_arg_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="ontoprobe",
        description="Score prompt datasets with a pluggable mask-logit adapter.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a dataset with a constant-logit stub")
    p.add_argument("dataset", help="JSONL file with prompt and label fields")
    p.add_argument("--labels", choices=("L1", "L2", "L3"), default="L1")
    p.add_argument("--template", choices=("T1", "T2"), default=None,
                   help="recorded in the report only")
    p.add_argument("--logit", action="append", type=_parse_logit, metavar="WORD=VALUE",
                   help="stub logit for one label word (repeatable)")
    p.add_argument("--out", help="write the report JSON here instead of stdout")
    return top


def main(argv: list[str] | None = None) -> int:
    args = build_arg_parser().parse_args(argv)
    try:
        word_set = label_words(args.labels)
        logits = dict(args.logit or [])
        for word in word_set.all_words():
            logits.setdefault(word, 0.0)
        dataset = read_prompt_records(args.dataset)
        report = evaluate(
            dataset, ConstantAdapter(logits), word_set, template=args.template
        )
        if args.out:
            report.write(args.out)
        else:
            print(report.to_json())
        return 0
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
