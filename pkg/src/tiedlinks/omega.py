"""The ``v = 1`` invariant from class linking data, and skein-rule checks."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .coeff import A, B, ONE, U, V, C_GENERIC, CoeffError, Frac, Scalar
from .invariants import TraceEngine, specialize, upsilon
from .tiedbraid import TiedBraidWord, clinking_graph, closure_components, sig, tie

C_OMEGA = C_GENERIC.subs({"v": ONE})  # = 1/u


def sqrt_u() -> Scalar:
    """``sqrt(u)`` at ``v = 1``, where ``(sqrt c)^2 = 1/u``; encoded as ``1/sqrt(c)``."""
    return Scalar(0, U, C_OMEGA)


@dataclass
class OmegaSummary:
    m: int
    k: int
    p: int
    edges: list
    value: Scalar


def _components_after(k: int, edges: list) -> int:
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in edges:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry
    return sum(1 for x in range(k) if find(x) == x)


def omega_from_graph(m: int, k: int, edges: list) -> Scalar:
    """Sum over subsets ``S`` of class-linking edges (``S`` = edges replaced by a tie)."""
    su = sqrt_u()
    base = su ** (m - 1) * A ** (1 - m)
    total = Frac.zero()
    for chosen in product((False, True), repeat=len(edges)):
        coeff = ONE
        tied = []
        for (x, y, weight), t in zip(edges, chosen):
            q = U ** (-weight)
            if t:
                coeff = coeff * (1 - q)
                tied.append((x, y))
            else:
                coeff = coeff * q
        h = _components_after(k, tied)
        total = total + coeff * B ** (m - h)
    return base * total


def omega_fast(w: TiedBraidWord) -> OmegaSummary:
    m, _ = closure_components(w)
    graph = clinking_graph(w)
    value = omega_from_graph(m, graph.k, graph.edges)
    return OmegaSummary(m, graph.k, len(graph.edges), list(graph.edges), value)


def omega_recursive(m: int, k: int, edges: list, order: list | None = None) -> Scalar:
    """Generalised skein recursion, unlinking class pairs in the given edge order."""
    order = list(range(len(edges))) if order is None else order
    su = sqrt_u()

    def go(classes: list, remaining: list) -> Scalar:
        # classes: class id per original vertex (merged by ties)
        if not remaining:
            h = len(set(classes))
            return su ** (m - 1) * A ** (1 - m) * B ** (m - h)
        idx, rest = remaining[0], remaining[1:]
        x, y, weight = edges[idx]
        q = U ** (-weight)
        apart = go(classes, rest) * q
        cx, cy = classes[x], classes[y]
        merged = [cx if c == cy else c for c in classes]
        return apart + go(merged, rest) * (1 - q)

    return go(list(range(k)), order)


def _exps(f: Frac, name: str) -> tuple[set, set]:
    return f.num.exponents(name), f.den.exponents(name)


def omega_exponents(x: OmegaSummary | Scalar, classical: bool = False) -> tuple[int, int, int, int]:
    """``(r, s_b, 1 - r, 1 - r - s_b)`` read off an ``Omega`` value."""
    value = x.value if isinstance(x, OmegaSummary) else x
    part = value.odd if value.odd else value.even
    if value.odd and value.even:
        raise CoeffError("value has both even and odd parts")
    num_a, den_a = _exps(part, "a")
    if len(num_a) != 1 or len(den_a) != 1:
        raise CoeffError("value does not carry a single power of a")
    r = num_a.pop() - den_a.pop()
    num_b, den_b = _exps(part, "b")
    if len(den_b) != 1:
        raise CoeffError("denominator is not homogeneous in b")
    s_b = min(num_b) - den_b.pop()
    if classical and s_b != 0:
        raise CoeffError(f"classical link with minimal b-exponent {s_b}")
    return r, s_b, 1 - r, 1 - r - s_b


# ---------------------------------------------------------------- skein rules

RULES = ("III", "IV", "Va", "Vb", "omegaIV", "qp")


def skein_diagrams(w: TiedBraidWord, pos: int) -> dict[str, TiedBraidWord]:
    """The five related words at crossing ``pos``: ``+, -, ~, +~, -~``."""
    letter = w.letters[pos]
    if letter[0] != "s":
        raise ValueError(f"position {pos} of {w} is not a crossing")
    i = letter[1]
    pre, post = tuple(w.letters[:pos]), tuple(w.letters[pos + 1 :])

    def make(mid):
        return TiedBraidWord(w.strands, pre + mid + post, w.top_ties, w.name)

    return {
        "+": make((sig(i, 1),)),
        "-": make((sig(i, -1),)),
        "~": make((tie(i),)),
        "+~": make((tie(i), sig(i, 1))),
        "-~": make((tie(i), sig(i, -1))),
    }


def skein_residual(w: TiedBraidWord, pos: int, rule: str, engine: TraceEngine | None = None) -> Scalar:
    """Left side minus right side of ``rule`` at crossing ``pos``; zero iff the rule holds."""
    if rule not in RULES:
        raise ValueError(f"unknown rule {rule!r}")
    eng = engine or TraceEngine()
    diagrams = skein_diagrams(w, pos)
    val = {key: upsilon(d, eng).value for key, d in diagrams.items()}
    if rule in ("omegaIV", "qp"):
        val = {key: x.subs({"v": ONE}) for key, x in val.items()}
    sc = Scalar.sqrt_c(val["+"].c)
    inv = sc.inverse()
    if rule == "III":
        return inv * val["+"] - sc * val["-"] - (V - 1) / U * val["~"] - inv * (1 - U.inverse()) * val["+~"]
    if rule == "IV":
        return inv / U * val["+~"] - sc * val["-~"] - (V - 1) / U * val["~"]
    if rule == "Va":
        return inv * val["+"] - sc * (val["-"] + (U - 1) * val["-~"]) - (V - 1) * val["~"]
    if rule == "Vb":
        return sc * val["-"] - inv * (val["+"] + (1 - U) / U * val["+~"]) - (1 - V) / U * val["~"]
    if rule == "omegaIV":
        su = sqrt_u()
        return su * val["+"] - su.inverse() * val["-"] + su * (U.inverse() - 1) * val["+~"]
    return val["+~"] - val["-~"]


def skein_check(w: TiedBraidWord, pos: int, rule: str, engine: TraceEngine | None = None) -> bool:
    return not skein_residual(w, pos, rule, engine)


def omega_trace(w: TiedBraidWord, engine: TraceEngine | None = None) -> Scalar:
    """``Omega`` through the trace engine (generic evaluation, then ``v := 1``)."""
    return specialize(upsilon(w, engine), "omega").value
