"""Command-line front end.

    ktreebank convert --in kaist.brackets --out out.conll --tagset kaist
    ktreebank transform --in kaist.brackets --out penn.brackets
    ktreebank validate --in out.conll
    ktreebank stats --in train.conll --in dev.conll --in test.conll
    ktreebank split --in all.brackets --out splits/ --ratios .8,.1,.1
    ktreebank subst --in gold.conll --auto sejong.morph --tagset sejong --out auto.conll
    ktreebank agree --in gold.morph --auto hannanum.morph

Diagnostics go to stderr as ``severity<TAB>location<TAB>code<TAB>message``.
Exit status: 0 ok, 1 finished with error diagnostics, 2 usage or I/O failure.
"""
from __future__ import annotations

import argparse
import contextlib
import dataclasses
import itertools
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import audit
from .depconv import to_dependency
from .model import DEFAULT_REGISTRY, TagError, Tagset, TagsetRegistry
from .transform import to_penn
from .treeio import (Diagnostic, DependencyTree, TreeSyntaxError, read_conll,
                     read_morph_file, read_treebank, serialize_tree, sniff_format,
                     write_conll)

log = logging.getLogger("ktreebank")

BATCH = 512


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    inputs: list
    output: str | None = None
    tagset: Tagset = Tagset.KAIST
    strict: bool | None = None
    config: str | None = None
    manifest: str | None = None
    ratios: tuple | None = None
    auto: str | None = None
    workers: int = 1
    report_format: str = "text"
    registry: TagsetRegistry = field(default=DEFAULT_REGISTRY, repr=False)


class Run:
    """Shared state of one invocation: config, diagnostics and exit status."""

    def __init__(self, cfg: RunConfig, stderr):
        self.cfg = cfg
        self.stderr = stderr
        self.errors = 0
        self.warnings = 0

    def report(self, diag: Diagnostic):
        if diag.is_error:
            self.errors += 1
        else:
            self.warnings += 1
        self.stderr.write(diag.format() + "\n")

    def report_all(self, diags, **where):
        for d in diags:
            self.report(d.at(**where) if where else d)

    @contextlib.contextmanager
    def output(self, stdout):
        if self.cfg.output is None:
            yield stdout
            return
        with open(self.cfg.output, "w", encoding="utf-8", newline="\n") as f:
            yield f

    def open_input(self, path):
        return open(path, encoding="utf-8", newline="")


# -- workers -------------------------------------------------------------------

_worker_registry = DEFAULT_REGISTRY


def _init_worker(config, strict):
    global _worker_registry
    _worker_registry = _build_registry(config, strict)


def _convert_tree(item):
    ordinal, tree = item
    warnings = []
    penn = to_penn(tree, _worker_registry, warnings)
    return ordinal, to_dependency(penn, _worker_registry), warnings


def _transform_tree(item):
    ordinal, tree = item
    warnings = []
    return ordinal, to_penn(tree, _worker_registry, warnings), warnings


def _mapped(run: Run, func, items):
    """Apply func to items in order, optionally over a process pool."""
    global _worker_registry
    if run.cfg.workers <= 1:
        _worker_registry = run.cfg.registry
        yield from map(func, items)
        return
    with ProcessPoolExecutor(run.cfg.workers, initializer=_init_worker,
                             initargs=(run.cfg.config, run.cfg.strict)) as pool:
        it = iter(items)
        while True:
            batch = list(itertools.islice(it, BATCH))
            if not batch:
                return
            yield from pool.map(func, batch, chunksize=32)


def _numbered(run, reader):
    """(ordinal, tree) pairs from a TreebankReader.

    Diagnostics are reported as they arrive; the reader's warning list is
    drained so it does not grow with the corpus.
    """
    for n, item in enumerate(reader, 1):
        run.report_all(reader.warnings)
        reader.warnings.clear()
        if isinstance(item, Diagnostic):
            run.report(item)
        else:
            yield n, item


# -- subcommands ---------------------------------------------------------------

def cmd_transform(run: Run, stdout):
    path = run.cfg.inputs[0]
    with run.open_input(path) as f, run.output(stdout) as out:
        reader = read_treebank(f, run.cfg.registry, path)
        for n, penn, warnings in _mapped(run, _transform_tree, _numbered(run, reader)):
            run.report_all(warnings, source=path, tree=n)
            out.write(serialize_tree(penn) + "\n")
    log.info("transform: kept %d, dropped %d", reader.kept, reader.dropped)


def cmd_convert(run: Run, stdout):
    path = run.cfg.inputs[0]
    with run.open_input(path) as f, run.output(stdout) as out:
        reader = read_treebank(f, run.cfg.registry, path)
        for n, dep, warnings in _mapped(run, _convert_tree, _numbered(run, reader)):
            run.report_all(warnings, source=path, tree=n)
            try:
                out.write(write_conll(dep, run.cfg.tagset, run.cfg.registry))
            except TagError as e:
                run.report(Diagnostic("error", "tagset", str(e), source=path, tree=n))
    log.info("convert: kept %d, dropped %d", reader.kept, reader.dropped)


def _input_format(path) -> str:
    with open(path, encoding="utf-8") as f:
        return sniff_format(f.read(4096))


def _items(run, path, f):
    """Trees or dependency trees from a file of either format."""
    if _input_format(path) == "brackets":
        for _, tree in _numbered(run, read_treebank(f, run.cfg.registry, path)):
            yield tree
        return
    for item in read_conll(f, run.cfg.registry, path):
        if isinstance(item, Diagnostic):
            run.report(item)
        else:
            yield item


def cmd_validate(run: Run, stdout):
    total = 0
    for path in run.cfg.inputs:
        with run.open_input(path) as f:
            ordinal = 0
            for item in _items(run, path, f):
                ordinal += 1
                total += 1
                if not isinstance(item, DependencyTree):
                    warnings = []
                    item = to_dependency(to_penn(item, run.cfg.registry, warnings),
                                         run.cfg.registry)
                    run.report_all(warnings, source=path, tree=ordinal)
                run.report_all(audit.validate_dependency(item, run.cfg.registry),
                               source=path, tree=ordinal)
    with run.output(stdout) as out:
        out.write(f"{total} trees checked, {run.errors} errors, {run.warnings} warnings\n")


def cmd_stats(run: Run, stdout):
    manifest = audit.Manifest.read(run.cfg.manifest) if run.cfg.manifest else None
    if manifest is not None and len(run.cfg.inputs) != 1:
        raise UsageError("--manifest needs exactly one --in")
    with contextlib.ExitStack() as stack:
        streams = []
        for path in run.cfg.inputs:
            f = stack.enter_context(run.open_input(path))
            streams.append((os.path.basename(path), _items(run, path, f)))
        try:
            report = audit.corpus_stats(streams, manifest, run.cfg.registry)
        except audit.ManifestError as e:
            raise UsageError(f"manifest: {e}") from None
    with run.output(stdout) as out:
        out.write(report.to_tsv() if run.cfg.report_format == "tsv" else report.to_text())


def cmd_split(run: Run, stdout):
    path = run.cfg.inputs[0]
    if run.cfg.output is None:
        raise UsageError("split needs --out DIRECTORY")
    if (run.cfg.ratios is None) == (run.cfg.manifest is None):
        raise UsageError("split needs exactly one of --ratios or --manifest")
    fmt = _input_format(path)
    quiet = Run(run.cfg, open(os.devnull, "w"))
    with run.open_input(path) as f:
        total = sum(1 for _ in _items(quiet, path, f))
    quiet.stderr.close()
    try:
        if run.cfg.manifest:
            manifest = audit.Manifest.read(run.cfg.manifest)
            manifest.check(total)
            split_of = manifest.split_of
        else:
            a, b = audit.ratio_boundaries(total, run.cfg.ratios)
            split_of = lambda i: "train" if i <= a else ("dev" if i <= b else "test")
    except ValueError as e:
        raise UsageError(str(e)) from None
    os.makedirs(run.cfg.output, exist_ok=True)
    ext = ".conll" if fmt == "conll" else ".brackets"
    counts = dict.fromkeys(audit.SPLITS, 0)
    with contextlib.ExitStack() as stack:
        outs = {s: stack.enter_context(open(os.path.join(run.cfg.output, s + ext), "w",
                                            encoding="utf-8", newline="\n"))
                for s in audit.SPLITS}
        f = stack.enter_context(run.open_input(path))
        for i, item in enumerate(_items(run, path, f), 1):
            split = split_of(i)
            counts[split] += 1
            if isinstance(item, DependencyTree):
                outs[split].write(write_conll(item, None, run.cfg.registry))
            else:
                outs[split].write(serialize_tree(item) + "\n")
    log.info("split: %s", counts)


def cmd_subst(run: Run, stdout):
    path = run.cfg.inputs[0]
    if run.cfg.auto is None:
        raise UsageError("subst needs --auto MORPH_FILE")
    with run.open_input(path) as f, run.open_input(run.cfg.auto) as af, \
            run.output(stdout) as out:
        morph_warnings = []
        autos = read_morph_file(af, run.cfg.registry, morph_warnings)
        sentences = read_conll(f, run.cfg.registry, path)
        ordinal = 0
        for item in sentences:
            if isinstance(item, Diagnostic):
                run.report(item)
                continue
            ordinal += 1
            auto = next(autos, None)
            if auto is None:
                run.report(Diagnostic("error", "length-mismatch",
                                      "no automatic analysis left for this sentence",
                                      source=path, tree=ordinal))
                out.write(write_conll(item, None, run.cfg.registry))
                continue
            new, diags = audit.substitute_morphology(item, auto, run.cfg.tagset,
                                                     run.cfg.registry)
            run.report_all(diags, source=path, tree=ordinal)
            out.write(write_conll(new, None, run.cfg.registry))
        if next(autos, None) is not None:
            run.report(Diagnostic("error", "length-mismatch",
                                  "more analysed sentences than dependency trees",
                                  source=run.cfg.auto))
        run.report_all(morph_warnings, source=run.cfg.auto)


def cmd_agree(run: Run, stdout):
    if run.cfg.auto is None:
        raise UsageError("agree needs --auto MORPH_FILE")
    with run.open_input(run.cfg.inputs[0]) as g, run.open_input(run.cfg.auto) as a:
        try:
            report = audit.morph_agreement(read_morph_file(g, run.cfg.registry),
                                           read_morph_file(a, run.cfg.registry))
        except ValueError as e:
            if isinstance(e, TreeSyntaxError):
                raise
            run.report(Diagnostic("error", "sentence-count",
                                  "gold and automatic files differ in sentence count"))
            return
    with run.output(stdout) as out:
        out.write(report.to_tsv() if run.cfg.report_format == "tsv" else report.to_text())


COMMANDS = {
    "transform": (cmd_transform, "KAIST trees to Penn-style trees"),
    "convert": (cmd_convert, "trees to CoNLL-X dependencies"),
    "validate": (cmd_validate, "check trees or CoNLL-X files"),
    "stats": (cmd_stats, "tree and token counts"),
    "split": (cmd_split, "train/dev/test split"),
    "subst": (cmd_subst, "substitute automatic morphology into CoNLL-X"),
    "agree": (cmd_agree, "compare automatic with gold morphology"),
}


# -- argument handling ---------------------------------------------------------

def _ratios(text):
    try:
        values = tuple(float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad ratios {text!r}") from None
    if len(values) != 3:
        raise argparse.ArgumentTypeError("expected three comma-separated ratios")
    return values


def _positive(text):
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ktreebank", description="Korean treebank conversion toolkit.")
    parser.add_argument("-v", "--verbose", action="store_true",
                        help="log run metadata to stderr")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (_, helptext) in COMMANDS.items():
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--in", dest="inputs", action="append", required=True,
                       metavar="PATH", help="input file (repeatable for stats/validate)")
        p.add_argument("--out", dest="output", metavar="PATH",
                       help="output file (directory for split); default stdout")
        p.add_argument("--tagset", choices=["kaist", "sejong"], default="kaist")
        mode = p.add_mutually_exclusive_group()
        mode.add_argument("--strict", dest="strict", action="store_true", default=None)
        mode.add_argument("--lenient", dest="strict", action="store_false")
        p.add_argument("--config", metavar="PATH", help="registry override file")
        p.add_argument("--workers", type=_positive, default=1, metavar="N")
        if name in ("stats", "split"):
            p.add_argument("--manifest", metavar="PATH", help="split manifest")
        if name == "split":
            p.add_argument("--ratios", type=_ratios, metavar="A,B,C")
        if name in ("subst", "agree"):
            p.add_argument("--auto", metavar="PATH", help="automatic morph file")
        if name in ("stats", "agree"):
            p.add_argument("--format", dest="report_format", choices=["text", "tsv"],
                           default="text")
    return parser


def _build_registry(config, strict):
    registry = TagsetRegistry.from_config(config) if config else DEFAULT_REGISTRY
    if strict is not None and registry.strict != strict:
        registry = dataclasses.replace(registry, strict=strict)
    return registry


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(stderr), contextlib.redirect_stdout(stdout):
            args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    handler = logging.StreamHandler(stderr)
    handler.setFormatter(logging.Formatter("# %(name)s: %(message)s"))
    log.addHandler(handler)
    log.setLevel(logging.INFO if args.verbose else logging.WARNING)
    log.propagate = False
    try:
        return _run(args, stdout, stderr)
    finally:
        log.removeHandler(handler)


def _run(args, stdout, stderr) -> int:
    single = args.command not in ("stats", "validate")
    if single and len(args.inputs) > 1:
        stderr.write(f"ktreebank {args.command}: takes a single --in\n")
        return 2
    paths = list(args.inputs) + [getattr(args, "auto", None) or None,
                                 getattr(args, "manifest", None) or None, args.config]
    for path in filter(None, paths):
        if not os.path.isfile(path) or not os.access(path, os.R_OK):
            stderr.write(f"ktreebank: cannot read {path}\n")
            return 2
    try:
        registry = _build_registry(args.config, args.strict)
    except (ValueError, OSError) as e:
        stderr.write(f"ktreebank: config: {e}\n")
        return 2
    cfg = RunConfig(
        command=args.command, inputs=args.inputs, output=args.output,
        tagset=Tagset.parse(args.tagset), strict=args.strict, config=args.config,
        manifest=getattr(args, "manifest", None), ratios=getattr(args, "ratios", None),
        auto=getattr(args, "auto", None), workers=args.workers,
        report_format=getattr(args, "report_format", "text"), registry=registry)
    state = Run(cfg, stderr)
    started = time.perf_counter()
    try:
        COMMANDS[args.command][0](state, stdout)
    except UsageError as e:
        stderr.write(f"ktreebank {args.command}: {e}\n")
        return 2
    except TreeSyntaxError as e:
        state.report(e.diagnostic)
    except (OSError, UnicodeDecodeError) as e:
        stderr.write(f"ktreebank {args.command}: I/O error: {e}\n")
        return 2
    log.info("%s finished in %.2fs: %d errors, %d warnings", args.command,
             time.perf_counter() - started, state.errors, state.warnings)
    return 1 if state.errors else 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
