"""Tied braid words, their closures and linking data.

Letters are ``("s", i, +1)``, ``("s", i, -1)`` for crossings and ``("e", i)``
for ties, with 1-based strand positions ``i, i+1``.  Letters act left to right
on strand positions: a crossing ``s_i`` swaps the occupants of positions ``i``
and ``i+1``.  Strands are identified by their top position.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Letter = tuple  # ("s", i, sign) | ("e", i)


class ParseError(ValueError):
    """Malformed link file; ``line`` is 1-based (0 when unknown)."""

    def __init__(self, message: str, line: int = 0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


class MoveError(ValueError):
    pass


class SetPartition:
    """Partition of ``{0..n-1}`` stored as block labels (label = least element)."""

    __slots__ = ("labels",)

    def __init__(self, labels: Sequence[int]):
        self.labels = tuple(labels)

    @classmethod
    def discrete(cls, n: int) -> SetPartition:
        return cls(range(n))

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> SetPartition:
        p = cls.discrete(n)
        for block in blocks:
            block = list(block)
            for x in block[1:]:
                p = p.join_pair(block[0], x)
        return p

    @property
    def n(self) -> int:
        return len(self.labels)

    def blocks(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for i, lab in enumerate(self.labels):
            out.setdefault(lab, []).append(i)
        return list(out.values())

    def join_pair(self, i: int, j: int) -> SetPartition:
        li, lj = self.labels[i], self.labels[j]
        if li == lj:
            return self
        lo, hi = min(li, lj), max(li, lj)
        return SetPartition([lo if x == hi else x for x in self.labels])

    def join(self, other: SetPartition) -> SetPartition:
        p = self
        for block in other.blocks():
            for x in block[1:]:
                p = p.join_pair(block[0], x)
        return p

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SetPartition) and self.labels == other.labels

    def __hash__(self) -> int:
        return hash(self.labels)

    def __len__(self) -> int:
        return len(set(self.labels))

    def __repr__(self) -> str:
        return "SetPartition(" + "".join(
            "{" + ",".join(str(x + 1) for x in b) + "}" for b in self.blocks()
        ) + ")"


@dataclass(frozen=True)
class TiedBraidWord:
    strands: int
    letters: tuple = ()
    top_ties: tuple = ()  # blocks of 1-based strand positions, applied after the word
    name: str = ""

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError("strands must be >= 1")
        for letter in self.letters:
            i = letter[1]
            if not 1 <= i <= self.strands - 1:
                raise ValueError(f"letter index {i} out of range for {self.strands} strands")
            if letter[0] == "s" and letter[2] not in (1, -1):
                raise ValueError(f"bad sign in {letter}")
        for block in self.top_ties:
            for x in block:
                if not 1 <= x <= self.strands:
                    raise ValueError(f"tie index {x} out of range for {self.strands} strands")

    @property
    def exponent_sum(self) -> int:
        return sum(lt[2] for lt in self.letters if lt[0] == "s")

    @property
    def crossing_positions(self) -> list[int]:
        return [k for k, lt in enumerate(self.letters) if lt[0] == "s"]

    def has_ties(self) -> bool:
        return any(lt[0] == "e" for lt in self.letters) or any(
            len(b) > 1 for b in self.top_ties
        )

    def top_partition(self) -> SetPartition:
        return SetPartition.from_blocks(self.strands, ([x - 1 for x in b] for b in self.top_ties))

    def text(self) -> str:
        return " ".join(format_letter(lt) for lt in self.letters)

    def __str__(self) -> str:
        ties = "".join("{" + ",".join(map(str, b)) + "}" for b in self.top_ties)
        return f"<{self.strands}: {self.text() or '1'}{' ties ' + ties if ties else ''}>"


def sig(i: int, sign: int = 1) -> Letter:
    return ("s", i, sign)


def tie(i: int) -> Letter:
    return ("e", i)


def format_letter(letter: Letter) -> str:
    if letter[0] == "e":
        return f"e{letter[1]}"
    return f"s{letter[1]}" + ("" if letter[2] == 1 else "^-1")


_TOKEN = re.compile(r"^(?:s(\d+)(\^-1)?|e(\d+))$")
_TIES = re.compile(r"^(\{\d+(?:,\d+)*\})+$")


def parse_tokens(tokens: str, strands: int, line: int = 0) -> tuple:
    letters = []
    if not tokens.strip():
        return ()
    for tok in tokens.split(" "):
        m = _TOKEN.match(tok)
        if not m:
            raise ParseError(f"malformed token {tok!r}", line)
        if m.group(3) is not None:
            letter = tie(int(m.group(3)))
        else:
            letter = sig(int(m.group(1)), -1 if m.group(2) else 1)
        if not 1 <= letter[1] <= strands - 1:
            raise ParseError(f"index out of range in token {tok!r} ({strands} strands)", line)
        letters.append(letter)
    return tuple(letters)


def parse(text: str) -> TiedBraidWord:
    """Parse the line-oriented link format (``name:``, ``strands:``, ``word:``, ``ties:``)."""
    fields: dict[str, tuple[int, str]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition(":")
        key = key.strip()
        if not sep or key not in ("name", "strands", "word", "ties"):
            raise ParseError(f"unrecognised line {raw!r}", lineno)
        if key in fields:
            raise ParseError(f"duplicate {key!r}", lineno)
        fields[key] = (lineno, value.strip())
    if "strands" not in fields:
        raise ParseError("missing strands header")
    lineno, value = fields["strands"]
    if not value.isdigit() or int(value) < 1:
        raise ParseError(f"bad strand count {value!r}", lineno)
    n = int(value)
    if "word" not in fields:
        raise ParseError("missing word line")
    wline, wtext = fields["word"]
    letters = parse_tokens(wtext, n, wline)
    top_ties: tuple = ()
    if "ties" in fields:
        tline, ttext = fields["ties"]
        if ttext:
            if not _TIES.match(ttext):
                raise ParseError(f"malformed ties {ttext!r}", tline)
            blocks = []
            for chunk in re.findall(r"\{([^}]*)\}", ttext):
                block = tuple(int(x) for x in chunk.split(","))
                if any(not 1 <= x <= n for x in block):
                    raise ParseError(f"tie index out of range in {{{chunk}}}", tline)
                blocks.append(block)
            top_ties = tuple(blocks)
    name = fields["name"][1] if "name" in fields else ""
    return TiedBraidWord(n, letters, top_ties, name)


def dump(w: TiedBraidWord) -> str:
    lines = []
    if w.name:
        lines.append(f"name: {w.name}")
    lines.append(f"strands: {w.strands}")
    lines.append(f"word: {w.text()}")
    if w.top_ties:
        lines.append("ties: " + "".join("{" + ",".join(map(str, b)) + "}" for b in w.top_ties))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- closure data


def _occupancy_walk(w: TiedBraidWord):
    """Yield ``(letter, left_strand, right_strand)`` for each letter and return the final occupancy."""
    occ = list(range(w.strands))
    events = []
    for letter in w.letters:
        i = letter[1] - 1
        events.append((letter, occ[i], occ[i + 1]))
        if letter[0] == "s":
            occ[i], occ[i + 1] = occ[i + 1], occ[i]
    return events, occ


def underlying_permutation(w: TiedBraidWord) -> list[int]:
    """``occ[p]`` = top position of the strand ending at bottom position ``p`` (0-based)."""
    return _occupancy_walk(w)[1]


@dataclass
class CLinkingGraph:
    vertices: list  # class blocks, each a sorted list of 1-based component ids
    edges: list  # (x, y, weight) with 0-based class indices x < y

    @property
    def k(self) -> int:
        return len(self.vertices)

    def is_connected(self) -> bool:
        parent = list(range(self.k))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for x, y, _ in self.edges:
            parent[find(x)] = find(y)
        return len({find(x) for x in range(self.k)}) <= 1


@dataclass
class LinkingData:
    m: int
    component_of_strand: list  # 0-based strand (top position) -> 0-based component
    lk: list  # m x m integer matrix
    classes: SetPartition  # on components
    cl_graph: CLinkingGraph = field(default=None)  # type: ignore[assignment]


def closure_components(w: TiedBraidWord) -> tuple[int, list[int]]:
    occ = underlying_permutation(w)
    n = w.strands
    # closure joins bottom position p to top position p; strand occ[p] ends at p
    nxt = [0] * n
    for p in range(n):
        nxt[occ[p]] = p
    comp = [-1] * n
    m = 0
    for s in range(n):
        if comp[s] < 0:
            x = s
            while comp[x] < 0:
                comp[x] = m
                x = nxt[x]
            m += 1
    return m, comp


def linking_matrix(w: TiedBraidWord) -> list[list[int]]:
    m, comp = closure_components(w)
    events, _ = _occupancy_walk(w)
    acc = [[0] * m for _ in range(m)]
    for letter, x, y in events:
        if letter[0] != "s":
            continue
        p, q = comp[x], comp[y]
        if p != q:
            acc[p][q] += letter[2]
            acc[q][p] += letter[2]
    for row in acc:
        for j, val in enumerate(row):
            if val % 2:
                raise AssertionError("odd inter-component crossing sum")
            row[j] = val // 2
    return acc


def class_partition(w: TiedBraidWord) -> SetPartition:
    m, comp = closure_components(w)
    events, occ = _occupancy_walk(w)
    part = SetPartition.discrete(m)
    for letter, x, y in events:
        if letter[0] == "e":
            part = part.join_pair(comp[x], comp[y])
    for block in w.top_ties:
        first = comp[occ[block[0] - 1]]
        for pos in block[1:]:
            part = part.join_pair(first, comp[occ[pos - 1]])
    return part


def class_linking(lk: Sequence[Sequence[int]], classes: SetPartition) -> CLinkingGraph:
    blocks = classes.blocks()
    edges = []
    for x in range(len(blocks)):
        for y in range(x + 1, len(blocks)):
            weight = sum(lk[p][q] for p in blocks[x] for q in blocks[y])
            if weight:
                edges.append((x, y, weight))
    return CLinkingGraph([[c + 1 for c in b] for b in blocks], edges)


def clinking_graph(w: TiedBraidWord) -> CLinkingGraph:
    return class_linking(linking_matrix(w), class_partition(w))


def linking_data(w: TiedBraidWord) -> LinkingData:
    m, comp = closure_components(w)
    lk = linking_matrix(w)
    classes = class_partition(w)
    return LinkingData(m, comp, lk, classes, class_linking(lk, classes))


# ---------------------------------------------------------------- moves


def tie_all(w: TiedBraidWord) -> TiedBraidWord:
    return TiedBraidWord(w.strands, w.letters, (tuple(range(1, w.strands + 1)),), w.name)


def _move_ties_past(blocks: tuple, i: int) -> tuple:
    """Top ties ``B`` followed by ``s_i`` equal ``s_i`` followed by ``s_i(B)``."""

    def sw(x):
        return i + 1 if x == i else i if x == i + 1 else x

    return tuple(tuple(sorted(sw(x) for x in b)) for b in blocks)


def free_reduce(letters: Sequence[Letter]) -> tuple:
    out: list = []
    for lt in letters:
        if out and lt[0] == "s" and out[-1][0] == "s" and out[-1][1] == lt[1] and out[-1][2] == -lt[2]:
            out.pop()
        else:
            out.append(lt)
    return tuple(out)


def conjugate(w: TiedBraidWord, i: int, sign: int) -> TiedBraidWord:
    """``s_i^{-sign} w s_i^{sign}``; top ties are carried across the appended crossing."""
    if not 1 <= i <= w.strands - 1:
        raise MoveError(f"conjugation index {i} out of range")
    letters = (sig(i, -sign),) + tuple(w.letters) + (sig(i, sign),)
    return TiedBraidWord(w.strands, letters, _move_ties_past(w.top_ties, i), w.name)


def stabilize(w: TiedBraidWord, sign: int) -> TiedBraidWord:
    n = w.strands
    letters = tuple(w.letters) + (sig(n, sign),)
    return TiedBraidWord(n + 1, letters, _move_ties_past(w.top_ties, n), w.name)


def _adj(i, j):
    return abs(i - j) == 1


def _far(i, j):
    return abs(i - j) > 1


def _relation_rewrites(seg: tuple) -> list[tuple[int, tuple]]:
    """All ``(consumed_length, replacement)`` rewrites of the monoid relations at a segment start."""
    out = []
    a = seg[0] if seg else None
    b = seg[1] if len(seg) > 1 else None
    c = seg[2] if len(seg) > 2 else None
    if a is None:
        return out
    # eta2 (both directions)
    if a[0] == "e":
        out.append(("eta2", 1, (a, a)))
        if b == a:
            out.append(("eta2", 2, (a,)))
    if b is not None:
        # eta1: ties commute
        if a[0] == "e" and b[0] == "e" and a != b:
            out.append(("eta1", 2, (b, a)))
        # eta3/eta4: tie commutes with crossing of same or far index
        if a[0] == "e" and b[0] == "s" and (a[1] == b[1] or _far(a[1], b[1])):
            out.append(("eta3" if a[1] == b[1] else "eta4", 2, (b, a)))
        if a[0] == "s" and b[0] == "e" and (a[1] == b[1] or _far(a[1], b[1])):
            out.append(("eta3" if a[1] == b[1] else "eta4", 2, (b, a)))
        # eta7: far crossings commute
        if a[0] == "s" and b[0] == "s" and _far(a[1], b[1]):
            out.append(("eta7", 2, (b, a)))
        # free cancellation
        if a[0] == "s" and b[0] == "s" and a[1] == b[1] and a[2] == -b[2]:
            out.append(("free", 2, ()))
    if c is not None:
        # eta5 / eta9: e_i s_j s_i^{+-1} <-> s_j s_i^{+-1} e_j
        if a[0] == "e" and b[0] == "s" and c[0] == "s" and b[2] == 1 and _adj(a[1], b[1]) and c[1] == a[1]:
            out.append(("eta5" if c[2] == 1 else "eta9", 3, (b, c, tie(b[1]))))
        if c[0] == "e" and a[0] == "s" and b[0] == "s" and a[2] == 1 and _adj(a[1], b[1]) and c[1] == a[1]:
            out.append(("eta5" if b[2] == 1 else "eta9", 3, (tie(b[1]), a, b)))
        # eta6: e_i e_j s_i = e_j s_i e_j = s_i e_i e_j
        forms = []
        if a[0] == "e" and b[0] == "e" and c[0] == "s" and c[2] == 1 and a[1] == c[1] and _adj(a[1], b[1]):
            forms = [(c[1], b[1])]
        elif a[0] == "e" and b[0] == "s" and c[0] == "e" and b[2] == 1 and a == c and _adj(a[1], b[1]):
            forms = [(b[1], a[1])]
        elif a[0] == "s" and b[0] == "e" and c[0] == "e" and a[2] == 1 and b[1] == a[1] and _adj(a[1], c[1]):
            forms = [(a[1], c[1])]
        for i, j in forms:
            variants = [(tie(i), tie(j), sig(i)), (tie(j), sig(i), tie(j)), (sig(i), tie(i), tie(j))]
            for var in variants:
                if var != (a, b, c):
                    out.append(("eta6", 3, var))
        # eta8: braid relation
        if all(x[0] == "s" and x[2] == 1 for x in (a, b, c)) and a[1] == c[1] and _adj(a[1], b[1]):
            out.append(("eta8", 3, (b, a, b)))
    return out


def relation_moves(w: TiedBraidWord) -> list[tuple[str, int, int, tuple]]:
    """Every applicable ``(relation id, position, matched length, replacement)``."""
    moves = []
    for pos in range(len(w.letters)):
        seg = tuple(w.letters[pos : pos + 3])
        for rid, length, repl in _relation_rewrites(seg):
            moves.append((rid, pos, length, repl))
    return moves


def apply_relation(w: TiedBraidWord, rid: str, pos: int, choice: int = 0) -> TiedBraidWord:
    """Rewrite the word with relation ``rid`` at ``pos`` (``choice`` selects among matches)."""
    seg = tuple(w.letters[pos : pos + 3])
    matches = [(ln, repl) for r, ln, repl in _relation_rewrites(seg) if r == rid]
    if not matches:
        raise MoveError(f"relation {rid} does not match at position {pos} of {w}")
    length, repl = matches[choice % len(matches)]
    letters = tuple(w.letters[:pos]) + repl + tuple(w.letters[pos + length :])
    return TiedBraidWord(w.strands, letters, w.top_ties, w.name)


def markov_move(w: TiedBraidWord, move: tuple) -> TiedBraidWord:
    """Apply ``("conjugate", i, sign)``, ``("stabilize", sign)`` or ``("relation", rid, pos[, choice])``."""
    kind = move[0]
    if kind == "conjugate":
        return conjugate(w, move[1], move[2])
    if kind == "stabilize":
        return stabilize(w, move[1])
    if kind == "relation":
        return apply_relation(w, move[1], move[2], *move[3:])
    raise MoveError(f"unknown move {kind!r}")


def random_move(w: TiedBraidWord, rng: random.Random, max_strands: int = 5) -> tuple[tuple, TiedBraidWord]:
    options = ["relation"] * 3 + ["conjugate"]
    if w.strands < max_strands:
        options.append("stabilize")
    while True:
        kind = rng.choice(options)
        if kind == "relation":
            moves = relation_moves(w)
            if not moves:
                continue
            rid, pos, _, _ = rng.choice(moves)
            choice = rng.randrange(4)
            move = ("relation", rid, pos, choice)
        elif kind == "conjugate":
            if w.strands < 2:
                continue
            move = ("conjugate", rng.randint(1, w.strands - 1), rng.choice((1, -1)))
        else:
            move = ("stabilize", rng.choice((1, -1)))
        return move, markov_move(w, move)


def random_word(
    rng: random.Random,
    max_strands: int = 4,
    max_length: int = 10,
    tie_prob: float = 0.25,
    min_strands: int = 1,
) -> TiedBraidWord:
    n = rng.randint(min_strands, max_strands)
    letters = []
    if n > 1:
        for _ in range(rng.randint(0, max_length)):
            i = rng.randint(1, n - 1)
            if rng.random() < tie_prob:
                letters.append(tie(i))
            else:
                letters.append(sig(i, rng.choice((1, -1))))
    return TiedBraidWord(n, tuple(letters))
