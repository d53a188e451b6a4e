"""Command-line driver.

Exit codes: 0 success / pass, 1 verification failed, 2 bad input or usage,
3 no configuration found.

    tripleconf gen --group Z7 --full --output s.txt
    tripleconf quads --input s.txt
    tripleconf find --input s.txt --t 2 --output cfg.txt
    tripleconf verify --input s.txt --config cfg.txt
    tripleconf span --input s.txt --subset "0 1 2"
    tripleconf run manifest.json
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from tripleconf import hypergraph, triples
from tripleconf.errors import (
    BudgetExceeded,
    ConfigurationNotFound,
    InvalidParameter,
    InvalidSpecification,
    ParseError,
    ValidationError,
)
from tripleconf.finder import (
    SearchParams,
    dumps_configuration,
    find_configuration,
    load_configuration,
    verify_configuration,
)
from tripleconf.group import parse_group
from tripleconf.quadruples import enumerate_good_quadruples, q_max

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_NOT_FOUND = 0, 1, 2, 3

INPUT_ERRORS = (ParseError, ValidationError, InvalidSpecification, InvalidParameter, OSError)


@dataclass
class RunManifest:
    """Everything needed to repeat a run.

    ``source`` is ``"full"``, ``"random"`` (uses ``density`` and ``seed``) or
    ``"file"`` (uses ``input``).
    """

    command: str
    group: str | None = None
    source: str = "full"
    density: float | None = None
    seed: int = 0
    input: str | None = None
    params: dict = field(default_factory=dict)
    output: str | None = None

    def argv(self) -> list[str]:
        args = [self.command]
        if self.source == "file":
            args += ["--input", self.input]
        else:
            args += ["--group", self.group]
            if self.source == "full":
                args.append("--full")
            else:
                args += ["--density", repr(self.density), "--seed", str(self.seed)]
        for key, value in sorted(self.params.items()):
            args += [f"--{key.replace('_', '-')}", str(value)]
        if self.output is not None:
            args += ["--output", self.output]
        return args

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> RunManifest:
        return cls(**json.loads(text))


def _group_arg(text):
    try:
        g = parse_group(text)
    except InvalidSpecification as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if any(m < 1 for m in g.cyclic_orders):
        raise argparse.ArgumentTypeError(f"bad group {text!r}")
    return g


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _density(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0 <= v <= 1:
        raise argparse.ArgumentTypeError(f"density must lie in [0, 1], got {v}")
    return v


def _add_source(p, required_group=False):
    p.add_argument("--input", help="triple-set file")
    p.add_argument("--group", type=_group_arg, required=required_group, help='e.g. "Z5" or "Z2xZ3"')
    p.add_argument("--full", action="store_true", help="use every triple (a, b, a+b)")
    p.add_argument("--density", type=_density, help="sample floor(c n^2) triples")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tripleconf", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a triple-set file")
    _add_source(p, required_group=True)
    p.add_argument("--output")

    p = sub.add_parser("quads", help="good-quadruple statistics")
    _add_source(p)
    p.add_argument("--output", help='write the "x1 x2 x3 q" histogram here')
    p.add_argument("--dump", help="write every bucket's quadruples here")
    p.add_argument("--threads", type=_positive, default=1)

    p = sub.add_parser("find", help="run the layered configuration search")
    _add_source(p)
    p.add_argument("--t", type=_positive, default=2)
    p.add_argument("--min-bucket", type=_positive, default=3)
    p.add_argument("--min-edges", type=_positive, default=8)
    p.add_argument("--threads", type=_positive, default=1)
    p.add_argument("--output")

    p = sub.add_parser("verify", help="recheck a configuration file against a triple set")
    _add_source(p)
    p.add_argument("--config", required=True)

    p = sub.add_parser("span", help="spanned-triple counts and exact subset search")
    _add_source(p)
    what = p.add_mutually_exclusive_group(required=True)
    what.add_argument("--m", type=int)
    what.add_argument("--subset", help='space- or comma-separated element ranks')
    p.add_argument("--budget", type=_positive, default=hypergraph.DEFAULT_BUDGET)

    p = sub.add_parser("run", help="execute a JSON run manifest")
    p.add_argument("manifest")
    return parser


def _is_hypergraph_file(text):
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            return line.isdigit()
    return False


def _load_source(args, allow_hypergraph=False):
    if args.input:
        text = Path(args.input).read_text()
        if allow_hypergraph and _is_hypergraph_file(text):
            return hypergraph.loads(text)
        return triples.loads(text)
    if args.group is None:
        raise InvalidParameter("give --input or --group")
    if args.full:
        return triples.full_system(args.group)
    if args.density is None:
        raise InvalidParameter("give --full or --density with --group")
    return triples.random_system(args.group, args.density, args.seed)


def _emit(text, path):
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_gen(args):
    S = _load_source(args)
    _emit(triples.dumps(S), args.output)
    info = sys.stdout if args.output else sys.stderr
    print(f"n={S.n} |S|={len(S)} density={S.density:.6f}", file=info)
    return EXIT_OK


def cmd_quads(args):
    S = _load_source(args)
    index = enumerate_good_quadruples(S, workers=args.threads)
    print(f"total={index.total}")
    print(f"buckets={len(index)}")
    if index:
        y, q = q_max(index)
        print(f"qmax={q} vector={y.x1} {y.x2} {y.x3}")
    else:
        print("qmax=0")
    if args.output:
        lines = [f"{x.x1} {x.x2} {x.x3} {q}" for x, q in index.items()]
        Path(args.output).write_text("".join(line + "\n" for line in lines))
    if args.dump:
        with open(args.dump, "w") as fh:
            for x, q in index.items():
                fh.write(f"# bucket {x.x1} {x.x2} {x.x3} q={q}\n")
                for quad in index.bucket(x):
                    fh.write(" ".join(map(str, quad)) + "\n")
    return EXIT_OK


def cmd_find(args):
    S = _load_source(args)
    params = SearchParams(t=args.t, min_bucket=args.min_bucket, min_edges=args.min_edges, workers=args.threads)
    try:
        cfg = find_configuration(S, params)
    except ConfigurationNotFound as exc:
        print(f"not-found: reason={exc.reason} level={exc.level} {exc.detail}".rstrip(), file=sys.stderr)
        return EXIT_NOT_FOUND
    report = verify_configuration(S, cfg)
    _emit(dumps_configuration(cfg, report), args.output)
    if args.output:
        print(report.summary())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_verify(args):
    S = _load_source(args)
    cfg = load_configuration(args.config)
    report = verify_configuration(S, cfg)
    print(report.summary())
    for problem in report.problems:
        print(f"  {problem}")
    return EXIT_OK if report.passed else EXIT_FAIL


def _parse_subset(text):
    toks = text.replace(",", " ").split()
    try:
        return sorted({int(tok) for tok in toks})
    except ValueError:
        raise InvalidParameter(f"bad subset {text!r}") from None


def cmd_span(args):
    src = _load_source(args, allow_hypergraph=True)
    if args.subset is not None:
        subset = _parse_subset(args.subset)
        if isinstance(src, hypergraph.Hypergraph3):
            if any(not 0 <= v < src.vertex_count for v in subset):
                raise ValidationError("subset element out of range")
            print(f"spanned={src.edges_within(subset)}")
        else:
            print(f"spanned={len(hypergraph.spanned_triples(src, subset))}")
        return EXIT_OK
    H = src if isinstance(src, hypergraph.Hypergraph3) else hypergraph.from_triple_system(src)
    k, witness = hypergraph.max_edges_spanned(H, args.m, budget=args.budget)
    print(f"k_max={k} witness={','.join(map(str, witness))}")
    return EXIT_OK


def cmd_run(args):
    manifest = RunManifest.from_json(Path(args.manifest).read_text())
    return main(manifest.argv())


COMMANDS = {"gen": cmd_gen, "quads": cmd_quads, "find": cmd_find, "verify": cmd_verify, "span": cmd_span, "run": cmd_run}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except BudgetExceeded as exc:
        print(f"budget-exceeded: {exc} (best so far {exc.best})", file=sys.stderr)
        return EXIT_INPUT
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
