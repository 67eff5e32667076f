"""End-to-end pipeline driver and debugging subcommands.

``run`` executes parse, preprocess, reason, sample, split, verbalise, and
render in one pass, writing train/dev/test JSONL plus a manifest; each stage
is also exposed as its own subcommand.  A job is reproducible from its
config and input alone: all outputs are byte-identical across reruns, and
the ``ONTOFORGE_SEED`` environment variable overrides the configured seed.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import preprocess as pp
from . import prompt as prompt_mod
from . import reasoner, sampler
from .core import atoms_of
from .parser import ParseOptions, parse_concept, parse_ontology
from .verbaliser import DEFAULT_LEXICON, verbalise


class PipelineError(RuntimeError):
    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"stage {stage!r} failed: {cause}")
        self.stage = stage
        self.cause = cause


@dataclass
class JobConfig:
    input: str
    out_dir: str
    task: str = "atomic"  # atomic | complex
    preset: str = "general"
    ratios: tuple[float, float, float] = (0.8, 0.1, 0.1)
    seed: int = 0
    cap: int = 4
    k_list: tuple[int, ...] = ()
    template: str | None = None
    labels: str | None = None
    dump_closure: bool = False

    @staticmethod
    def from_file(path: str | Path) -> "JobConfig":
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        return JobConfig.from_dict(data)

    @staticmethod
    def from_dict(data: dict) -> "JobConfig":
        cfg = JobConfig(input=data["input"], out_dir=data["out_dir"])
        for key in (
            "task",
            "preset",
            "seed",
            "cap",
            "template",
            "labels",
            "dump_closure",
        ):
            if key in data and data[key] is not None:
                setattr(cfg, key, data[key])
        if data.get("ratios"):
            cfg.ratios = _parse_ratios(data["ratios"])
        if data.get("k_list"):
            cfg.k_list = tuple(int(k) for k in data["k_list"])
        return cfg

    def resolved_seed(self) -> int:
        env = os.environ.get("ONTOFORGE_SEED")
        return int(env) if env else self.seed

    def hash(self) -> str:
        """Digest of the content-determining fields (output location excluded)."""
        payload = asdict(self)
        payload.pop("out_dir")
        blob = json.dumps(payload, sort_keys=True).encode("utf-8")
        return hashlib.sha256(blob).hexdigest()[:16]


def _parse_ratios(value) -> tuple[float, float, float]:
    if isinstance(value, str):
        sep = ":" if ":" in value else ","
        parts = [float(v) for v in value.split(sep)]
        if ":" in value:
            total = sum(parts)
            parts = [p / total for p in parts]
    else:
        parts = [float(v) for v in value]
    if len(parts) != 3:
        raise ValueError(f"need three ratios, got {value!r}")
    return (parts[0], parts[1], parts[2])


def _load_preset(name: str) -> pp.PreprocessConfig:
    if name and (os.sep in name or name.endswith(".json")):
        return pp.PreprocessConfig.from_file(name)
    return pp.load_preset(name or "general")


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _write_jsonl(path: Path, records: list[dict]) -> None:
    _atomic_write(path, "".join(json.dumps(r, ensure_ascii=False) + "\n" for r in records))


def _stage(name: str, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except PipelineError:
        raise
    except Exception as exc:
        raise PipelineError(name, exc) from exc


def run(cfg: JobConfig) -> dict:
    """Execute one dataset job; returns the manifest."""
    seed = cfg.resolved_seed()
    out_dir = Path(cfg.out_dir)
    warnings: list[dict] = []

    text = _stage("read", Path(cfg.input).read_text, encoding="utf-8")
    onto, parse_warnings = _stage("parse", parse_ontology, text, ParseOptions())
    warnings.extend(dict(w.as_record(), stage="parse") for w in parse_warnings)

    preset = _stage("preprocess", _load_preset, cfg.preset)
    onto, prep_warnings = _stage("preprocess", pp.apply, onto, preset)
    warnings.extend({"stage": "preprocess", "detail": w} for w in prep_warnings)

    graph = _stage("reason", reasoner.build, onto)

    rng = np.random.default_rng(seed)
    if cfg.task == "atomic":
        positives = _stage("sample", sampler.positive_atomic, graph, rng)
        negatives = _stage(
            "sample", sampler.negative_atomic, graph, rng, len(positives)
        )
        samples = positives + negatives
    elif cfg.task == "complex":
        samples, sample_warnings = _stage(
            "sample", sampler.complex_samples, graph, onto, rng, cfg.cap
        )
        warnings.extend(sample_warnings)
    else:
        raise PipelineError("sample", ValueError(f"unknown task {cfg.task!r}"))

    ds = _stage("split", sampler.split, samples, cfg.ratios, rng, True, seed)

    names = pp.display_names(onto)
    template = prompt_mod.Template(cfg.template) if cfg.template else None
    label_set = prompt_mod.label_words(cfg.labels) if cfg.labels else None

    def records_of(items) -> list[dict]:
        out = []
        for s in items:
            record = sampler.to_record(s, names, DEFAULT_LEXICON)
            if template is not None:
                record["prompt"] = prompt_mod.render(
                    record["v_sub"], record["v_super"], template
                )
                record["labels"] = label_set.id if label_set else None
            out.append(record)
        return out

    manifest_counts = {}
    for name, part in ds.partitions().items():
        records = _stage("render", records_of, part)
        _stage("write", _write_jsonl, out_dir / f"{name}.jsonl", records)
        by_prov: dict[str, int] = {}
        for s in part:
            by_prov[s.provenance] = by_prov.get(s.provenance, 0) + 1
        manifest_counts[name] = {
            "total": len(part),
            "positive": sum(1 for s in part if s.label == sampler.POSITIVE),
            "negative": sum(1 for s in part if s.label == sampler.NEGATIVE),
            "provenance": dict(sorted(by_prov.items())),
        }

    for k in cfg.k_list:
        train_k, dev_k = _stage("k-shot", sampler.k_shot, ds, k, seed)
        _stage("write", _write_jsonl, out_dir / f"train_k{k}.jsonl", records_of(train_k))
        _stage("write", _write_jsonl, out_dir / f"dev_k{k}.jsonl", records_of(dev_k))

    if cfg.dump_closure:
        _stage("write", _atomic_write, out_dir / "closure.tsv", graph.closure_edges() + "\n")

    _stage("write", _write_jsonl, out_dir / "warnings.jsonl", warnings)

    manifest = {
        "config": asdict(cfg),
        "config_hash": cfg.hash(),
        "seed": seed,
        "counts": manifest_counts,
        "balance": {
            name: counts["positive"] == counts["negative"]
            for name, counts in manifest_counts.items()
        },
        "warnings": len(warnings),
    }
    _stage(
        "write",
        _atomic_write,
        out_dir / "manifest.json",
        json.dumps(manifest, indent=2, sort_keys=True) + "\n",
    )
    return manifest


def stats(path: str | Path) -> dict:
    """Recount a dataset from disk; flags cross-partition duplicate keys."""
    path = Path(path)
    if path.is_dir():
        files = [p for p in (path / f"{n}.jsonl" for n in ("train", "dev", "test")) if p.exists()]
    else:
        files = [path]

    report: dict = {"partitions": {}, "violations": []}
    seen: dict[tuple[str, str], str] = {}
    concepts: set[str] = set()
    for file in files:
        name = file.stem
        counts = {"total": 0, "positive": 0, "negative": 0, "provenance": {}}
        with open(file, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    record = json.loads(line)
                    key = (record["sub"], record["super"])
                    label = record["label"]
                    provenance = record["provenance"]
                except (json.JSONDecodeError, KeyError) as exc:
                    raise ValueError(f"{file}:{lineno}: malformed record ({exc})") from exc
                counts["total"] += 1
                if label == "entailment":
                    counts["positive"] += 1
                else:
                    counts["negative"] += 1
                counts["provenance"][provenance] = (
                    counts["provenance"].get(provenance, 0) + 1
                )
                for side in key:
                    try:
                        concepts.update(atoms_of(parse_concept(side)))
                    except ValueError as exc:
                        raise ValueError(
                            f"{file}:{lineno}: unparseable expression ({exc})"
                        ) from exc
                if key in seen and seen[key] != name:
                    report["violations"].append(
                        {"key": list(key), "partitions": [seen[key], name]}
                    )
                seen[key] = name
        counts["provenance"] = dict(sorted(counts["provenance"].items()))
        report["partitions"][name] = counts
    report["unique_keys"] = len(seen)
    report["unique_concepts"] = len(concepts)
    return report


# ---------------------------------------------------------------------------
# argparse front end
# ---------------------------------------------------------------------------


def _cmd_parse(args) -> int:
    text = Path(args.input).read_text(encoding="utf-8")
    opts = ParseOptions(on_unsupported=args.on_unsupported)
    onto, warnings = parse_ontology(text, opts)
    if args.warnings:
        _write_jsonl(Path(args.warnings), [w.as_record() for w in warnings])
    print(
        json.dumps(
            {
                "concepts": len(onto.concepts),
                "properties": len(onto.properties),
                "individuals": len(onto.individuals),
                "axioms": len(onto.axioms),
                "warnings": len(warnings),
            }
        )
    )
    return 0


def _cmd_verbalise(args) -> int:
    text = Path(args.input).read_text(encoding="utf-8")
    onto, _ = parse_ontology(text, ParseOptions())
    onto, _ = pp.apply(onto, _load_preset(args.preset))
    names = pp.display_names(onto)
    exprs = [args.expr] if args.expr else [line.strip() for line in sys.stdin if line.strip()]
    for raw in exprs:
        print(verbalise(parse_concept(raw), names))
    return 0


def _cmd_run(args) -> int:
    if args.config:
        cfg = JobConfig.from_file(args.config)
    else:
        if not (args.input and args.out):
            print("error: need --config or both INPUT and --out", file=sys.stderr)
            return 2
        cfg = JobConfig(input=args.input, out_dir=args.out)
    for key, attr in (
        ("input", "input"),
        ("out", "out_dir"),
        ("task", "task"),
        ("preset", "preset"),
        ("seed", "seed"),
        ("cap", "cap"),
        ("template", "template"),
        ("labels", "labels"),
    ):
        value = getattr(args, key, None)
        if value is not None:
            setattr(cfg, attr, value)
    if args.ratios:
        cfg.ratios = _parse_ratios(args.ratios)
    if args.k:
        cfg.k_list = tuple(args.k)
    if args.dump_closure:
        cfg.dump_closure = True
    manifest = run(cfg)
    print(json.dumps(manifest["counts"]))
    return 0


def _cmd_sample(args, task: str) -> int:
    args.config = None
    args.task = task
    return _cmd_run(args)


def _cmd_render(args) -> int:
    template = prompt_mod.Template(args.template)
    label_set = prompt_mod.label_words(args.labels)
    records = []
    with open(args.input, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
                record["prompt"] = prompt_mod.render(
                    record["v_sub"], record["v_super"], template
                )
            except (json.JSONDecodeError, KeyError) as exc:
                raise ValueError(f"{args.input}:{lineno}: malformed record ({exc})") from exc
            record["labels"] = label_set.id
            records.append(record)
    _write_jsonl(Path(args.out), records)
    print(json.dumps({"rendered": len(records)}))
    return 0


def _cmd_stats(args) -> int:
    print(json.dumps(stats(args.path), indent=2, sort_keys=True))
    return 0


def build_arg_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="ontoforge",
        description="Build subsumption-inference probing datasets from OWL ontologies.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse an ontology document and print a summary")
    p.add_argument("input")
    p.add_argument("--on-unsupported", choices=("skip_with_warning", "fail"),
                   default="skip_with_warning")
    p.add_argument("--warnings", help="write skipped constructs to this JSONL file")
    p.set_defaults(fn=_cmd_parse)

    p = sub.add_parser("verbalise", help="verbalise canonical concept expressions")
    p.add_argument("input", help="ontology document supplying the labels")
    p.add_argument("--expr", help="expression text; otherwise read lines from stdin")
    p.add_argument("--preset", default="general")
    p.set_defaults(fn=_cmd_verbalise)

    def add_job_flags(p, with_task: bool):
        p.add_argument("input", nargs="?")
        p.add_argument("--out", help="output directory")
        p.add_argument("--preset", default=None)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--ratios", default=None, help="e.g. 8:1:1 or 0.8,0.1,0.1")
        p.add_argument("--cap", type=int, default=None)
        p.add_argument("--k", type=int, action="append", help="emit a K-shot subset (repeatable)")
        p.add_argument("--template", choices=("T1", "T2"), default=None)
        p.add_argument("--labels", choices=("L1", "L2", "L3"), default=None)
        p.add_argument("--dump-closure", action="store_true")
        if with_task:
            p.add_argument("--task", choices=("atomic", "complex"), default=None)
            p.add_argument("--config", help="JSON job config; flags override")

    p = sub.add_parser("run", help="run a full dataset job from a config")
    add_job_flags(p, with_task=True)
    p.set_defaults(fn=_cmd_run)

    p = sub.add_parser("sample-atomic", help="build an atomic SI dataset")
    add_job_flags(p, with_task=False)
    p.set_defaults(fn=lambda args: _cmd_sample(args, "atomic"))

    p = sub.add_parser("sample-complex", help="build a complex SI dataset")
    add_job_flags(p, with_task=False)
    p.set_defaults(fn=lambda args: _cmd_sample(args, "complex"))

    p = sub.add_parser("render", help="add prompt strings to a dataset")
    p.add_argument("input")
    p.add_argument("--out", required=True)
    p.add_argument("--template", choices=("T1", "T2"), default="T1")
    p.add_argument("--labels", choices=("L1", "L2", "L3"), default="L1")
    p.set_defaults(fn=_cmd_render)

    p = sub.add_parser("stats", help="recount a dataset from disk")
    p.add_argument("path")
    p.set_defaults(fn=_cmd_stats)

    return top


def main(argv: list[str] | None = None) -> int:
    args = build_arg_parser().parse_args(argv)
    try:
        return args.fn(args)
    except PipelineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
