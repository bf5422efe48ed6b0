"""The two-parameter algebra of braids and ties, ``E_n(u, v)``.

Elements are linear combinations of normal-form words ``E_A R_w`` keyed by a
set partition ``A`` (block labels, label = least element) and a permutation
``w`` in one-line notation, both 0-based on ``{0..n-1}``.

Conventions.  ``R_w = R_{i1} ... R_{ik}`` for a reduced word has permutation
``w = s_{i1} o ... o s_{ik}`` (composition of functions), so ``w o s_i`` swaps
entries ``i-1, i`` of the one-line tuple and ``l(w s_i) > l(w)`` iff
``w(i) < w(i+1)``.  Ties are transported by ``R_w E_B = E_{w(B)} R_w``; in
particular ``E_A R_w E_i = E_{A v w{i,i+1}} R_w``.

Generator indices in the public API are 1-based, as in ``R_1 .. R_{n-1}``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import factorial
from typing import Any, Callable, Iterable, Sequence

from .coeff import ONE, U, V, DeltaExt, Frac, MPoly
from .tiedbraid import SetPartition, TiedBraidWord

Key = tuple  # (partition labels, permutation)


def _join(labels: tuple, x: int, y: int) -> tuple:
    lx, ly = labels[x], labels[y]
    if lx == ly:
        return labels
    lo, hi = (lx, ly) if lx < ly else (ly, lx)
    return tuple(lo if t == hi else t for t in labels)


def join_blocks(labels: tuple, other: tuple) -> tuple:
    """Join of two partitions given as label tuples."""
    first: dict[int, int] = {}
    for i, lab in enumerate(other):
        if lab in first:
            labels = _join(labels, first[lab], i)
        else:
            first[lab] = i
    return labels


def transport(labels: tuple, perm: tuple) -> tuple:
    """Image ``w(B)`` of a partition under ``perm``: ``p ~ q`` in B iff ``w(p) ~ w(q)``."""
    n = len(labels)
    out = tuple(range(n))
    first: dict[int, int] = {}
    for i, lab in enumerate(labels):
        if lab in first:
            out = _join(out, perm[first[lab]], perm[i])
        else:
            first[lab] = i
    return out


def reduced_word(perm: Sequence[int]) -> list[int]:
    """0-based generator list ``g`` with ``perm = s_{g0} o s_{g1} o ...``, of minimal length."""
    w = list(perm)
    out = []
    while True:
        for i in range(len(w) - 1):
            if w[i] > w[i + 1]:
                w[i], w[i + 1] = w[i + 1], w[i]
                out.append(i)
                break
        else:
            break
    return out[::-1]


def perm_length(perm: Sequence[int]) -> int:
    n = len(perm)
    return sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])


def bell(n: int) -> int:
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


class Algebra:
    """Right-multiplication engine for ``E_n(u, v)`` with arbitrary coefficient ring.

    ``u`` and ``v`` are coefficient-ring elements (``Frac`` by default; ``DeltaExt``
    or specialised values work too).  ``one`` is the ring unit.
    """

    def __init__(self, n: int, u: Any = U, v: Any = V, one: Any = ONE):
        self.n = n
        self.u = u
        self.v = v
        self.one = one
        self.u1 = u - 1
        self.v1 = v - 1
        u_inv = one / u if not isinstance(one, Frac) else u.inverse()
        self.inv_e = (1 - v) * u_inv  # coefficient of E_i in R_i^{-1}
        self.inv_er = u_inv - 1  # coefficient of E_i R_i in R_i^{-1}
        self.identity_key: Key = (tuple(range(n)), tuple(range(n)))

    # -- construction

    def unit(self) -> dict:
        return {self.identity_key: self.one}

    def zero(self) -> dict:
        return {}

    def basis(self, labels: Iterable[int], perm: Iterable[int], coeff: Any = None) -> dict:
        return {(tuple(labels), tuple(perm)): self.one if coeff is None else coeff}

    # -- linear structure

    @staticmethod
    def add(x: dict, y: dict, scale: Any = None) -> dict:
        out = dict(x)
        for k, c in y.items():
            if scale is not None:
                c = c * scale
            if k in out:
                s = out[k] + c
                if s:
                    out[k] = s
                else:
                    del out[k]
            elif c:
                out[k] = c
        return out

    @staticmethod
    def scale(x: dict, s: Any) -> dict:
        out = {}
        for k, c in x.items():
            p = c * s
            if p:
                out[k] = p
        return out

    def sub(self, x: dict, y: dict) -> dict:
        return self.add(x, y, -self.one)

    @staticmethod
    def _acc(out: dict, key: Key, c: Any) -> None:
        if key in out:
            s = out[key] + c
            if s:
                out[key] = s
            else:
                del out[key]
        elif c:
            out[key] = c

    def equal(self, x: dict, y: dict) -> bool:
        return not self.sub(x, y)

    # -- generators

    def mul_E(self, x: dict, i: int) -> dict:
        """Right multiplication by ``E_i`` (1-based)."""
        k = i - 1
        out: dict = {}
        for (labels, perm), c in x.items():
            self._acc(out, (_join(labels, perm[k], perm[k + 1]), perm), c)
        return out

    def mul_tie(self, x: dict, block_labels: tuple) -> dict:
        """Right multiplication by the generalised tie ``E_B`` of a whole partition."""
        out: dict = {}
        for (labels, perm), c in x.items():
            self._acc(out, (join_blocks(labels, transport(block_labels, perm)), perm), c)
        return out

    def mul_pair(self, x: dict, p: int, q: int) -> dict:
        """Right multiplication by the two-point tie ``E_{p,q}`` (0-based positions)."""
        out: dict = {}
        for (labels, perm), c in x.items():
            self._acc(out, (_join(labels, perm[p], perm[q]), perm), c)
        return out

    def mul_R(self, x: dict, i: int, sign: int = 1) -> dict:
        """Right multiplication by ``R_i^{sign}`` (1-based)."""
        if sign == -1:
            xe = self.mul_E(x, i)
            out = self.mul_R(x, i)
            out = self.add(out, xe, self.inv_e)
            return self.add(out, self.mul_R(xe, i), self.inv_er)
        k = i - 1
        out: dict = {}
        u1, v1 = self.u1, self.v1
        for (labels, perm), c in x.items():
            swapped = list(perm)
            swapped[k], swapped[k + 1] = swapped[k + 1], swapped[k]
            swapped = tuple(swapped)
            if perm[k] < perm[k + 1]:
                self._acc(out, (labels, swapped), c)
            else:
                # w = w' s_i with w' = swapped; R_w R_i = R_w' (1 + (u-1)E_i + (v-1)E_i R_i)
                tied = _join(labels, swapped[k], swapped[k + 1])
                self._acc(out, (labels, swapped), c)
                if u1:
                    self._acc(out, (tied, swapped), c * u1)
                if v1:
                    self._acc(out, (tied, perm), c * v1)
        return out

    def mul_word(self, x: dict, ops: Iterable[tuple]) -> dict:
        """Apply a sequence of ``("E", i)`` / ``("R", i, sign)`` / ``("T", i, delta)`` ops."""
        for op in ops:
            kind = op[0]
            if kind == "E":
                x = self.mul_E(x, op[1])
            elif kind == "R":
                x = self.mul_R(x, op[1], op[2] if len(op) > 2 else 1)
            elif kind == "T":
                x = self.mul_T(x, op[1], op[2])
            else:
                raise ValueError(f"unknown op {op!r}")
        return x

    def mul_T(self, x: dict, i: int, delta: Any) -> dict:
        """Right multiplication by ``T_i = R_i + delta E_i R_i``."""
        return self.add(self.mul_R(x, i), self.mul_R(self.mul_E(x, i), i), delta)

    def mul_perm(self, x: dict, perm: Sequence[int]) -> dict:
        for g in reduced_word(perm):
            x = self.mul_R(x, g + 1)
        return x

    def mul_basis(self, x: dict, labels: tuple, perm: tuple) -> dict:
        """Right multiplication by the basis element ``E_A R_w``."""
        return self.mul_perm(self.mul_tie(x, labels), perm)

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for (labels, perm), c in y.items():
            out = self.add(out, self.mul_basis(x, labels, perm), c)
        return out

    def from_word(self, w: TiedBraidWord) -> dict:
        """Image of a tied braid word (crossings to ``R_i^{+-1}``, ties to ``E_i``, then top ties)."""
        if w.strands != self.n:
            raise ValueError("strand count mismatch")
        x = self.unit()
        for letter in w.letters:
            if letter[0] == "e":
                x = self.mul_E(x, letter[1])
            else:
                x = self.mul_R(x, letter[1], letter[2])
        if w.top_ties:
            x = self.mul_tie(x, w.top_partition().labels)
        return x

    def map_coeffs(self, x: dict, fn: Callable[[Any], Any]) -> dict:
        out = {}
        for k, c in x.items():
            d = fn(c)
            if d:
                out[k] = d
        return out

    def max_terms(self) -> int:
        return bell(self.n) * factorial(self.n)

    def random_element(self, rng: random.Random, terms: int = 3, with_v: bool = True) -> dict:
        """Random element with a few basis terms and small polynomial coefficients in ``u, v``."""
        n = self.n
        out: dict = {}
        for _ in range(terms):
            perm = list(range(n))
            rng.shuffle(perm)
            labels = tuple(range(n))
            for _ in range(rng.randint(0, n)):
                if n > 1:
                    labels = _join(labels, rng.randrange(n), rng.randrange(n))
            c = MPoly.const(rng.randint(-3, 3) or 1)
            if rng.random() < 0.5:
                c = c + MPoly.var("u") * rng.randint(-2, 2)
            if with_v and rng.random() < 0.5:
                c = c + MPoly.var("v") * rng.randint(-2, 2)
            if not c:
                c = MPoly.const(1)
            coeff = Frac(c)
            if not isinstance(self.one, Frac):
                coeff = self.one * coeff
            self._acc(out, (labels, tuple(perm)), coeff)
        return out or self.unit()


def elem_from_word(w: TiedBraidWord, scale: str = "none", algebra: Algebra | None = None):
    """Algebra image of ``w``; with ``scale="pi_c"`` also return the power of ``sqrt(c)``."""
    alg = algebra or Algebra(w.strands)
    x = alg.from_word(w)
    if scale == "pi_c":
        return x, w.exponent_sum
    return x


def render_element(x: dict) -> str:
    parts = []
    for (labels, perm), c in sorted(x.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        blocks = SetPartition(labels).blocks()
        ties = "".join("{" + ",".join(str(t + 1) for t in b) + "}" for b in blocks if len(b) > 1)
        word = "".join(f"R{g + 1}" for g in reduced_word(perm))
        basis = ("E" + ties if ties else "") + word or "1"
        coeff = c.render() if hasattr(c, "render") else repr(c)
        parts.append(f"{coeff}*{basis}")
    return " + ".join(parts) or "0"


# ---------------------------------------------------------------- relation checks


@dataclass
class CheckReport:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, rid: str, ok: bool, witness: Any = None) -> None:
        self.checked += 1
        if not ok:
            self.failures.append((rid, witness))

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        lines = [f"{status} {self.name}: {self.checked} identities checked, {len(self.failures)} failures"]
        for note in self.notes:
            lines.append(f"  note: {note}")
        for rid, witness in self.failures[:5]:
            lines.append(f"  {rid} failed on witness {witness}")
        return "\n".join(lines)


# A relation is a pair of linear combinations [(coeff_fn, ops), ...]; coeff_fn maps the
# Algebra to a scalar (or None for 1).


def _lin(alg: Algebra, x: dict, combo: list) -> dict:
    out: dict = {}
    for coeff, ops in combo:
        y = alg.mul_word(x, ops)
        c = coeff(alg) if coeff is not None else None
        out = alg.add(out, y, c)
    return out


def defining_relations(n: int) -> list[tuple[str, list, list]]:
    """Relations of ``E_n(u, v)`` as ``(id, lhs, rhs)`` over operator words.

    The tie/braid relation of the third-generator type uses the monoid form
    ``E_i R_j R_i = R_j R_i E_j`` for ``|i - j| = 1``.
    """
    rels = []
    idx = range(1, n)
    pairs = [(i, j) for i in idx for j in idx]
    one = None
    for i, j in pairs:
        rels.append(("bt1", [(one, [("E", i), ("E", j)])], [(one, [("E", j), ("E", i)])]))
        if abs(i - j) > 1:
            rels.append(("bt3", [(one, [("E", i), ("R", j)])], [(one, [("R", j), ("E", i)])]))
            rels.append(("bt7", [(one, [("R", i), ("R", j)])], [(one, [("R", j), ("R", i)])]))
        if abs(i - j) == 1:
            rels.append(("bt5", [(one, [("E", i), ("R", j), ("R", i)])], [(one, [("R", j), ("R", i), ("E", j)])]))
            rels.append(("eta9", [(one, [("E", i), ("R", j), ("R", i, -1)])], [(one, [("R", j), ("R", i, -1), ("E", j)])]))
            rels.append(("bt6", [(one, [("E", i), ("E", j), ("R", i)])], [(one, [("E", j), ("R", i), ("E", j)])]))
            rels.append(("bt6", [(one, [("E", j), ("R", i), ("E", j)])], [(one, [("R", i), ("E", i), ("E", j)])]))
            rels.append(("bt8", [(one, [("R", i), ("R", j), ("R", i)])], [(one, [("R", j), ("R", i), ("R", j)])]))
    for i in idx:
        rels.append(("bt2", [(one, [("E", i), ("E", i)])], [(one, [("E", i)])]))
        rels.append(("bt4", [(one, [("E", i), ("R", i)])], [(one, [("R", i), ("E", i)])]))
        rels.append(
            (
                "bt9",
                [(one, [("R", i), ("R", i)])],
                [(one, []), (lambda a: a.u1, [("E", i)]), (lambda a: a.v1, [("E", i), ("R", i)])],
            )
        )
        inverse_rhs = [
            (one, [("R", i)]),
            (lambda a: (1 - a.v) / a.u, [("E", i)]),
            (lambda a: a.one / a.u - 1, [("E", i), ("R", i)]),
        ]
        # R_i times the claimed inverse is the identity, on both sides
        rels.append(("Tinverse", [(c, [("R", i)] + ops) for c, ops in inverse_rhs], [(one, [])]))
        rels.append(("Tinverse", [(c, ops + [("R", i)]) for c, ops in inverse_rhs], [(one, [])]))
        rels.append(("Tinverse", [(one, [("R", i), ("R", i, -1)])], [(one, [])]))
        rels.append(("Tinverse", [(one, [("R", i, -1), ("R", i)])], [(one, [])]))
    return rels


def v1_relations(n: int) -> list[tuple[str, list, list]]:
    """Identities that hold only after ``v := 1``."""
    rels = []
    one = None
    for i in range(1, n):
        rels.append(("QuadraticInverse", [(one, [("R", i), ("R", i)])], [(one, []), (lambda a: a.u - 1, [("E", i)])]))
        rels.append(
            (
                "QuadraticInverse",
                [(one, [("R", i, -1)])],
                [(one, [("R", i)]), (lambda a: a.one / a.u - 1, [("E", i), ("R", i)])],
            )
        )
        rels.append(
            (
                "Cubic",
                [(lambda a: a.u + 1, [("R", i)]), (lambda a: -a.u, [("R", i, -1)])],
                [(one, [("R", i)] * 3)],
            )
        )
        # (R^2 - 1)(R^2 - u) = R^4 - (u+1) R^2 + u = 0
        rels.append(
            (
                "Quartic",
                [(one, [("R", i)] * 4), (lambda a: -(a.u + 1), [("R", i)] * 2), (lambda a: a.u, [])],
                [],
            )
        )
    return rels


def check_relations(n: int, seed: int = 42, trials: int = 200, relations=None, algebra=None) -> CheckReport:
    """Verify every defining relation, and the ``v = 1`` identities, as operator identities."""
    rng = random.Random(seed)
    alg = algebra or Algebra(n)
    report = CheckReport(f"relations n={n}")
    report.notes.append("ties transported as R_w E_B = E_{w(B)} R_w; bt5 in the E_i R_j R_i = R_j R_i E_j form")
    rels = relations if relations is not None else defining_relations(n)
    v1 = v1_relations(n) if relations is None else []
    per = max(1, trials // max(1, len(rels)))
    count = 0
    while count < trials:
        for rid, lhs, rhs in rels:
            for _ in range(per):
                x = alg.random_element(rng)
                diff = alg.sub(_lin(alg, x, lhs), _lin(alg, x, rhs))
                report.record(rid, not diff, x if diff else None)
                count += 1
        if not rels:
            break
    if v1:
        # E_n(u, 1): random elements are specialised with substitute(v := 1)
        alg1 = Algebra(n, U, ONE)
        per_v1 = max(1, trials // len(v1))
        for rid, lhs, rhs in v1:
            for _ in range(per_v1):
                x = alg.random_element(rng)
                x1 = alg.map_coeffs(x, lambda c: c.subs({"v": 1}))
                diff = alg1.sub(_lin(alg1, x1, lhs), _lin(alg1, x1, rhs))
                report.record(rid, not diff, x1 if diff else None)
    return report


def check_isomorphism(n: int, seed: int = 42, trials: int = 60) -> CheckReport:
    """The ``T_i = R_i + delta E_i R_i`` substitution over the quadratic extension of ``delta``."""
    rng = random.Random(seed)
    report = CheckReport(f"isomorphism n={n}")
    d = DeltaExt.z()
    one = DeltaExt(1)
    alg = Algebra(n, DeltaExt(U), DeltaExt(V), one)
    # coefficient identity: u(d+1)^2 - 1 == (v-1)(d+1)
    coef_e = U * (d + 1) * (d + 1) - 1
    coef_et = (V - 1) * (d + 1)
    report.record("QuadraticDelta", coef_e == coef_et, (coef_e, coef_et))
    for i in range(1, n):
        lhs = alg.mul_word(alg.unit(), [("T", i, d), ("T", i, d)])
        rhs = alg.add(alg.unit(), alg.mul_E(alg.unit(), i), coef_e)
        rhs = alg.add(rhs, alg.mul_word(alg.unit(), [("E", i), ("T", i, d)]), coef_et)
        report.record("quadra", alg.equal(lhs, rhs), render_element(alg.sub(lhs, rhs)))
        # R_i = T_i - d/(d+1) E_i T_i
        back = alg.add(
            alg.mul_word(alg.unit(), [("T", i, d)]),
            alg.mul_word(alg.unit(), [("E", i), ("T", i, d)]),
            -(d / (d + 1)),
        )
        report.record("R-from-T", alg.equal(back, alg.mul_R(alg.unit(), i)), None)
    # T_i satisfy the braid-and-tie relations (bt1)-(bt8)
    rels = [
        (rid, [(c, [_to_t(op, d) for op in ops]) for c, ops in lhs], [(c, [_to_t(op, d) for op in ops]) for c, ops in rhs])
        for rid, lhs, rhs in defining_relations(n)
        if rid in {"bt1", "bt2", "bt3", "bt4", "bt5", "bt6", "bt7", "bt8"}
    ]
    for rid, lhs, rhs in rels:
        for _ in range(max(1, trials // max(1, len(rels)))):
            x = alg.random_element(rng, terms=2)
            ok = alg.equal(_lin(alg, x, lhs), _lin(alg, x, rhs))
            report.record(f"T-{rid}", ok, None if ok else x)
    return report


def _to_t(op: tuple, delta: Any) -> tuple:
    if op[0] == "R":
        return ("T", op[1], delta)
    return op


def check_one_parameter(n: int, seed: int = 42, trials: int = 20) -> CheckReport:
    """Quadratic relations of the one-parameter presentations at ``v = u`` and ``u = 1``."""
    rng = random.Random(seed)
    report = CheckReport(f"one-parameter quadratics n={n}")
    # v := u: T_i^2 = 1 + (u-1)E_i + (u-1)E_i T_i with T_i = R_i
    alg_u = Algebra(n, U, U)
    # u := 1, v := q - 1/q + 1: V_i^2 = 1 + (q - 1/q) E_i V_i with V_i = R_i
    q = Frac.var("q")
    qq = q - q.inverse()
    alg_q = Algebra(n, ONE, qq + 1)
    # and from the one-parameter algebra with u = q^2: V_i = T_i + (1/q - 1) E_i T_i
    alg_sq = Algebra(n, q * q, q * q)
    for i in range(1, n):
        for _ in range(trials):
            x = alg_u.random_element(rng, with_v=False)
            lhs = alg_u.mul_word(x, [("R", i), ("R", i)])
            rhs = alg_u.add(alg_u.add(x, alg_u.mul_E(x, i), U - 1), alg_u.mul_word(x, [("E", i), ("R", i)]), U - 1)
            report.record("FirstQuadratic", alg_u.equal(lhs, rhs), None if alg_u.equal(lhs, rhs) else x)

            lhs = alg_q.mul_word(x, [("R", i), ("R", i)])
            rhs = alg_q.add(x, alg_q.mul_word(x, [("E", i), ("R", i)]), qq)
            ok = alg_q.equal(lhs, rhs)
            report.record("SecondQuadratic", ok, None if ok else x)

            def mul_vq(y, i=i):
                # V_i = R_i + (1/q - 1) E_i R_i in E_n(q^2, q^2)
                return alg_sq.add(alg_sq.mul_R(y, i), alg_sq.mul_R(alg_sq.mul_E(y, i), i), q.inverse() - 1)

            lhs = mul_vq(mul_vq(x))
            rhs = alg_sq.add(x, mul_vq(alg_sq.mul_E(x, i)), qq)
            ok = alg_sq.equal(lhs, rhs)
            report.record("SecondQuadratic-from-T", ok, None if ok else x)
    return report
