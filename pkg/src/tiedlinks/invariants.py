"""Markov trace on ``E_n(u, v)`` and the link invariants built from it."""

from __future__ import annotations

from dataclasses import dataclass, field

from .btalgebra import Algebra
from .coeff import A, B, ONE, Frac, Scalar, U, V
from .tiedbraid import TiedBraidWord, closure_components, class_partition, tie_all


class TraceEngine:
    """Evaluates the Markov trace with parameters ``a, b`` on basis words ``E_A R_w``.

    Results are memoised per engine on ``(A, w)``; create one engine per
    evaluation (or per batch on a single thread).
    """

    def __init__(self, u=U, v=V, a=A, b=B, tie_partner: str = "max"):
        self.u, self.v, self.a, self.b = u, v, a, b
        self.tie_partner = tie_partner
        self._algebras: dict[int, Algebra] = {}
        self._memo: dict[tuple, Frac] = {}

    def algebra(self, n: int) -> Algebra:
        if n not in self._algebras:
            self._algebras[n] = Algebra(n, self.u, self.v)
        return self._algebras[n]

    def trace(self, x: dict) -> Frac:
        total = Frac.zero()
        for (labels, perm), c in x.items():
            total = total + c * self.trace_basis(labels, perm)
        return total

    def trace_basis(self, labels: tuple, perm: tuple) -> Frac:
        key = (labels, perm)
        if key not in self._memo:
            self._memo[key] = self._trace_basis(labels, perm)
        return self._memo[key]

    def _partner(self, labels: tuple, k: int) -> int | None:
        others = [j for j in range(k) if labels[j] == labels[k]]
        if not others:
            return None
        return max(others) if self.tie_partner == "max" else min(others)

    def _trace_basis(self, labels: tuple, perm: tuple) -> Frac:
        n = len(perm)
        if n == 1:
            return ONE
        k = n - 1
        alg = self.algebra(n - 1)
        j = self._partner(labels, k)
        # A with the last point split off, restricted to {0..n-2}
        rest = _split_last(labels)
        p = perm.index(k)
        if p == k:
            small_perm = perm[:k]
            if j is None:
                return self.trace_basis(rest, small_perm)
            # E_A R_w = E_{A1} R_w E_{j',n} with j' = w^-1(j)
            jp = perm.index(j)
            if jp == k - 1:
                return self.b * self.trace_basis(rest, small_perm)
            # E_{j',n} = C E_{n-1} C^-1 with C = R_{j'+1} ... R_{n-2} (1-based)
            chain = list(range(jp + 1, k))  # 1-based generator indices
            x = alg.unit()
            for g in reversed(chain):
                x = alg.mul_R(x, g, -1)
            x = alg.mul_basis(x, rest, small_perm)
            for g in chain:
                x = alg.mul_R(x, g, 1)
            return self.b * self.trace(x)
        # w = w' o s_{n-1} o ... o s_p, so R_w = R_w' R_{n-1} Y with Y = R_{n-2} ... R_{p+1}
        w_prime = _strip_chain(perm, p)
        y_gens = list(range(k - 1, p, -1))  # 1-based indices of Y
        x = alg.unit()
        if j is not None:
            jp = w_prime.index(j)
            if jp != k - 1:
                # E_{j',n} R_{n-1} = R_{n-1} E_{j',n-1}; cycle E_{j',n-1} Y to the front
                x = alg.mul_pair(x, jp, k - 1)
            # jp == n-1: R_{n-1} E_{n-1} absorbs the tie (rule 2)
            labels_small = rest
        else:
            labels_small = labels[:k]
        for g in y_gens:
            x = alg.mul_R(x, g, 1)
        x = alg.mul_basis(x, labels_small, w_prime[:k])
        return self.a * self.trace(x)


def _split_last(labels: tuple) -> tuple:
    """Labels on ``{0..n-2}`` of ``A`` with the last point removed.

    Labels are least elements, so dropping the last point never relabels a block.
    """
    return labels[:-1]


def _strip_chain(perm: tuple, p: int) -> tuple:
    """``w' = w o (s_{n-1} ... s_p)^{-1}``: move entry ``p`` to the end."""
    lst = list(perm)
    val = lst.pop(p)
    lst.append(val)
    return tuple(lst)


def trace(x: dict, engine: TraceEngine | None = None) -> Frac:
    return (engine or TraceEngine()).trace(x)


@dataclass
class InvariantValue:
    value: Scalar
    engine: str = "trace"
    specialization: str = "generic"
    strands: int = 0
    components: int = 0
    classes: int = 0
    meta: dict = field(default_factory=dict)

    def render(self) -> str:
        return self.value.render()


def normalization(n: int, exponent_sum: int) -> Scalar:
    """``(a sqrt c)^{1-n} (sqrt c)^e``."""
    return Scalar.sqrt_c_power(exponent_sum + 1 - n) * A ** (1 - n)


def upsilon(w: TiedBraidWord, engine: TraceEngine | None = None) -> InvariantValue:
    """The invariant of the closure of ``w`` (tied or classical)."""
    eng = engine or TraceEngine()
    x = eng.algebra(w.strands).from_word(w)
    rho = eng.trace(x)
    value = normalization(w.strands, w.exponent_sum) * rho
    m, _ = closure_components(w)
    k = len(class_partition(w))
    return InvariantValue(value, "trace", "generic", w.strands, m, k)


SPECIALIZATIONS = {
    "delta": {"v": U},
    "theta": {"u": ONE},
    "omega": {"v": ONE},
}


def specialize(x: InvariantValue, which: str, reparametrize: bool = False) -> InvariantValue:
    """``delta``: v := u; ``theta``: u := 1 (optionally v := q - 1/q + 1); ``omega``: v := 1."""
    if which not in SPECIALIZATIONS:
        raise ValueError(f"unknown specialization {which!r}")
    bindings = dict(SPECIALIZATIONS[which])
    value = x.value.subs(bindings)
    if which == "theta" and reparametrize:
        q = Frac.var("q")
        value = value.subs({"v": q - q.inverse() + 1})
    return InvariantValue(value, x.engine, which, x.strands, x.components, x.classes, dict(x.meta))


def homflypt_equal(w1: TiedBraidWord, w2: TiedBraidWord) -> bool:
    """Homflypt equality of two classical links, via their all-tied images."""
    for w in (w1, w2):
        if w.has_ties():
            raise ValueError("Homflypt comparison is defined for classical (untied) links")
    return upsilon(tie_all(w1)).value == upsilon(tie_all(w2)).value
