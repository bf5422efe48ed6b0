"""Command-line interface: ``compute``, ``compare``, ``graph``, ``selfcheck``."""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import checks
from .invariants import TraceEngine, specialize, upsilon
from .omega import omega_fast, omega_trace
from .tiedbraid import ParseError, TiedBraidWord, linking_data, parse, tie_all

EXIT_OK, EXIT_SELFCHECK, EXIT_PARSE, EXIT_VALIDATION = 0, 1, 2, 3

INVARIANTS = ("upsilon", "delta", "theta", "omega", "homflypt")


class ValidationError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    inputs: list = field(default_factory=list)
    invariant: str = "upsilon"
    fast: bool = False
    verify: bool = False
    seed: int = 42
    strands: int = 4
    trials: int = 200
    output: str | None = None

    def validate(self) -> None:
        if self.invariant not in INVARIANTS:
            raise ValidationError(f"unknown invariant {self.invariant!r}")
        if self.fast and self.invariant != "omega":
            raise ValidationError("--fast is only valid with --invariant omega")
        if self.verify and not self.fast:
            raise ValidationError("--verify requires --fast")
        if self.command == "compare" and len(self.inputs) != 2:
            raise ValidationError("compare takes exactly two files")
        if self.strands < 2 or self.trials < 1:
            raise ValidationError("--strands must be >= 2 and --trials >= 1")


def load(path: str) -> TiedBraidWord:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from exc
    try:
        w = parse(text)
    except ParseError as exc:
        err = ParseError(f"{path}: {exc}")
        err.line = exc.line
        raise err from exc
    if not w.name:
        w = TiedBraidWord(w.strands, w.letters, w.top_ties, Path(path).stem)
    return w


def evaluate(w: TiedBraidWord, invariant: str, fast: bool = False, engine: TraceEngine | None = None):
    """Value of ``invariant`` on ``w`` as a Scalar."""
    if invariant == "homflypt":
        if w.has_ties():
            raise ValidationError(f"{w.name}: homflypt needs a classical (untied) link")
        return upsilon(tie_all(w), engine).value
    if invariant == "omega":
        return omega_fast(w).value if fast else omega_trace(w, engine)
    value = upsilon(w, engine)
    if invariant == "upsilon":
        return value.value
    return specialize(value, invariant).value


def cmd_compute(cfg: RunConfig, words: list[TiedBraidWord]) -> str:
    blocks = []
    for w in words:
        if cfg.invariant == "homflypt" and w.has_ties():
            raise ValidationError(f"{w.name}: homflypt needs a classical (untied) link")
    for w in words:
        engine = TraceEngine()
        value = evaluate(w, cfg.invariant, cfg.fast, engine)
        if cfg.verify and value != omega_trace(w, engine):
            raise AssertionError(f"{w.name}: omega engines disagree")
        data = linking_data(w)
        blocks.append(
            "\n".join(
                [
                    f"name: {w.name}",
                    f"strands: {w.strands}",
                    f"components: {data.m}",
                    f"classes: {len(data.classes)}",
                    f"invariant: {cfg.invariant}{' (fast)' if cfg.fast else ''}",
                    f"value: {value.render()}",
                ]
            )
        )
    return "\n\n".join(blocks) + "\n"


COMPARE_COLUMNS = (
    ("Upsilon(u,v)", "upsilon"),
    ("Upsilon(1,v)", "theta"),
    ("Upsilon(u,u)", "delta"),
    ("Upsilon(u,1)", "omega"),
)


# Published star patterns: link pairs with equal Homflypt, columns as in COMPARE_COLUMNS.
STAR_TABLE = {
    ("L11n358{0,1}", "L11n418{0,0}"): "* * . .",
    ("L11n358{1,1}", "L11n418{1,0}"): "* . * .",
    ("L11n356{1,0}", "L11n434{0,0}"): "* . * .",
    ("L11n325{1,1}", "L11n424{0,0}"): "* * * .",
    ("L10n79{1,1}", "L10n95{1,0}"): "* * * *",
    ("L11a404{1,1}", "L11a428{1,0}"): "* * * *",
    ("L11a467{0,1}", "L11a527{0,0}"): "* * . .",
    ("L10n76{1,1}", "L11n425{1,0}"): "* * * *",
}


def star_pattern(verdict: dict) -> str:
    return " ".join("*" if verdict[label] else "." for label, _ in COMPARE_COLUMNS)


def compare_words(w1: TiedBraidWord, w2: TiedBraidWord) -> dict:
    """Verdicts: Homflypt equality, then distinctness under each specialisation."""
    for w in (w1, w2):
        if w.has_ties():
            raise ValidationError(f"{w.name}: compare needs classical (untied) links")
    e1, e2 = TraceEngine(), TraceEngine()
    verdict = {"homflypt_equal": evaluate(w1, "homflypt", engine=e1) == evaluate(w2, "homflypt", engine=e2)}
    if not verdict["homflypt_equal"]:
        return verdict
    u1, u2 = upsilon(w1, e1), upsilon(w2, e2)
    for label, which in COMPARE_COLUMNS:
        if which == "upsilon":
            a, b = u1.value, u2.value
        else:
            a, b = specialize(u1, which).value, specialize(u2, which).value
        verdict[label] = a != b
    return verdict


def cmd_compare(cfg: RunConfig, words: list[TiedBraidWord]) -> str:
    w1, w2 = words
    verdict = compare_words(w1, w2)
    lines = [f"A: {w1.name}", f"B: {w2.name}"]
    lines.append(f"Homflypt equal: {'yes' if verdict['homflypt_equal'] else 'no'}")
    if not verdict["homflypt_equal"]:
        lines.append("(links differ already by Homflypt; specialisations not compared)")
        return "\n".join(lines) + "\n"
    stars = []
    for label, _ in COMPARE_COLUMNS:
        distinct = verdict[label]
        stars.append("*" if distinct else ".")
        lines.append(f"{label} distinct: {'yes' if distinct else 'no'}")
    lines.append("stars: " + " ".join(stars))
    return "\n".join(lines) + "\n"


def cmd_graph(cfg: RunConfig, words: list[TiedBraidWord]) -> str:
    blocks = []
    for w in words:
        data = linking_data(w)
        lines = [f"name: {w.name}", f"components: {data.m}"]
        lines.append("component of strand: " + " ".join(str(c + 1) for c in data.component_of_strand))
        lines.append("linking matrix:")
        for row in data.lk:
            lines.append("  " + " ".join(f"{x:3d}" for x in row))
        names = [chr(ord("A") + i) if i < 26 else f"C{i}" for i in range(data.cl_graph.k)]
        lines.append(
            "classes: "
            + " ".join(f"{nm}={{{','.join(map(str, blk))}}}" for nm, blk in zip(names, data.cl_graph.vertices))
        )
        if data.cl_graph.edges:
            lines.append("edges: " + " ".join(f"({names[x]},{names[y]},{wt})" for x, y, wt in data.cl_graph.edges))
        else:
            lines.append("edges: none")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def cmd_selfcheck(cfg: RunConfig) -> tuple[str, bool]:
    reports = checks.run_all(cfg.seed, cfg.strands, cfg.trials)
    text = "\n".join(r.summary() for r in reports)
    ok = all(r.ok for r in reports)
    return text + f"\n{'ALL PASS' if ok else 'FAILURES'}\n", ok


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tiedlinks", description="bt-algebra invariants of links and tied links")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--output", help="write results to this path instead of stdout")

    p = sub.add_parser("compute", help="evaluate an invariant on link files")
    p.add_argument("files", nargs="+")
    p.add_argument("--invariant", default="upsilon", choices=INVARIANTS)
    p.add_argument("--fast", action="store_true", help="omega from the class linking graph")
    p.add_argument("--verify", action="store_true", help="with --fast, also run the trace engine and compare")
    common(p)

    p = sub.add_parser("compare", help="Homflypt vs Upsilon verdicts for two classical links")
    p.add_argument("files", nargs=2)
    common(p)

    p = sub.add_parser("graph", help="linking matrix and class linking graph")
    p.add_argument("files", nargs="+")
    common(p)

    p = sub.add_parser("selfcheck", help="run the randomised verification suites")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--strands", type=int, default=4)
    p.add_argument("--trials", type=int, default=200)
    common(p)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        inputs=list(getattr(args, "files", [])),
        invariant=getattr(args, "invariant", "upsilon"),
        fast=getattr(args, "fast", False),
        verify=getattr(args, "verify", False),
        seed=getattr(args, "seed", 42),
        strands=getattr(args, "strands", 4),
        trials=getattr(args, "trials", 200),
        output=args.output,
    )
    code = EXIT_OK
    try:
        cfg.validate()
        if cfg.command == "selfcheck":
            text, ok = cmd_selfcheck(cfg)
            code = EXIT_OK if ok else EXIT_SELFCHECK
        else:
            words = [load(path) for path in cfg.inputs]
            handler = {"compute": cmd_compute, "compare": cmd_compare, "graph": cmd_graph}[cfg.command]
            text = handler(cfg, words)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except AssertionError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_SELFCHECK
    if cfg.output:
        Path(cfg.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
