"""Truncated universal enveloping algebras of anchored Lie algebras.

An :class:`Envelope` is the filtered piece ``F_N(U(L))`` with its PBW basis.
Elements are sparse ``{monomial index: coefficient}`` dictionaries; monomial
``i`` is ``env.words[i]``, a non-decreasing tuple of Lie basis indices, and
``env.monos[i]`` is the matching exponent vector.  Basis order is by degree,
then lexicographic on the non-decreasing words.
"""

from __future__ import annotations

from itertools import combinations_with_replacement
from math import comb
from typing import Mapping

from .anchored_lie import AnchoredLie
from .errors import DegreeOverflow
from .exactlin import ONE, Mat, Scalar, Vec, axpy, q

PBWMono = tuple  # exponent vector (k_1, ..., k_m)
EnvElement = dict  # {monomial index: Scalar}
Tensor2 = dict  # {(i, j): Scalar} in U ⊗ U
Tensor3 = dict  # {(i, j, k): Scalar} in U ⊗ U ⊗ U


def _words(m: int, n: int) -> list[tuple[int, ...]]:
    out = []
    for k in range(n + 1):
        out.extend(combinations_with_replacement(range(m), k))
    return out


def _exponents(word: tuple[int, ...], m: int) -> PBWMono:
    e = [0] * m
    for w in word:
        e[w] += 1
    return tuple(e)


def _word(exps: PBWMono) -> tuple[int, ...]:
    return tuple(i for i, k in enumerate(exps) for _ in range(k))


def pbw_basis(l: AnchoredLie, n: int) -> list[PBWMono]:
    """Exponent vectors of all PBW monomials of degree ``<= n``."""
    if n < 0:
        raise ValueError("degree bound must be nonnegative")
    return [_exponents(w, l.ldim) for w in _words(l.ldim, n)]


def pbw_count(m: int, n: int) -> int:
    return sum(comb(m + k - 1, k) for k in range(n + 1))


class Envelope:
    """``F_N(U(L))`` with normal ordering, coproduct and the action on ``A``.

    Results of normal ordering and action matrices are memoized; the caches
    are an internal detail and never change observable values.
    """

    def __init__(self, lie: AnchoredLie, N: int):
        if N < 0:
            raise ValueError("truncation degree must be nonnegative")
        self.lie = lie
        self.N = N
        self.m = lie.ldim
        self.words: tuple[tuple[int, ...], ...] = tuple(_words(self.m, N))
        self.monos: tuple[PBWMono, ...] = tuple(_exponents(w, self.m) for w in self.words)
        self.index: dict[tuple[int, ...], int] = {w: i for i, w in enumerate(self.words)}
        self.degrees: tuple[int, ...] = tuple(len(w) for w in self.words)
        self._nf: dict[tuple[int, ...], Vec] = {}
        self._act: dict[int, Mat] = {}
        self._cop: dict[int, Tensor2] = {}

    @property
    def dim(self) -> int:
        return len(self.words)

    def dim_upto(self, n: int) -> int:
        return sum(1 for d in self.degrees if d <= n)

    def one(self) -> EnvElement:
        return {0: ONE}

    def gen(self, i: int) -> EnvElement:
        return {self.index[(i,)]: ONE}

    def lie_element(self, x: Mapping) -> EnvElement:
        """``j_L(x)`` for a coordinate vector ``x`` of ``L``."""
        return {self.index[(i,)]: q(c) for i, c in x.items() if c}

    def mono_index(self, exps: PBWMono) -> int:
        return self.index[_word(tuple(exps))]

    def degree(self, u: Mapping) -> int:
        return max((self.degrees[i] for i in u), default=0)

    # -- products ---------------------------------------------------------

    def word_nf(self, word: tuple[int, ...]) -> EnvElement:
        """Normal form of an arbitrary word in the generators."""
        if len(word) > self.N:
            raise DegreeOverflow(len(word), self.N)
        hit = self._nf.get(word)
        if hit is not None:
            return hit
        for p in range(len(word) - 1):
            if word[p] > word[p + 1]:
                j, i = word[p], word[p + 1]
                pre, post = word[:p], word[p + 2:]
                out = dict(self.word_nf(pre + (i, j) + post))
                for k, c in self.lie.brackets[j][i].items():
                    axpy(out, c, self.word_nf(pre + (k,) + post))
                break
        else:
            out = {self.index[word]: ONE}
        self._nf[word] = out
        return out

    def mul(self, u: Mapping, v: Mapping) -> EnvElement:
        du, dv = self.degree(u), self.degree(v)
        if u and v and du + dv > self.N:
            raise DegreeOverflow(du + dv, self.N)
        out: Vec = {}
        for i, a in u.items():
            wi = self.words[i]
            for j, b in v.items():
                axpy(out, a * b, self.word_nf(wi + self.words[j]))
        return out

    def mul_words(self, *words: tuple[int, ...]) -> EnvElement:
        return self.word_nf(tuple(w for word in words for w in word))

    # -- coalgebra --------------------------------------------------------

    def counit(self, u: Mapping) -> Scalar:
        return u.get(0, q(0))

    def mono_coproduct(self, i: int) -> Tensor2:
        hit = self._cop.get(i)
        if hit is not None:
            return hit
        k = self.monos[i]
        out: Tensor2 = {}
        parts: list[tuple[tuple[int, ...], tuple[int, ...], int]] = [((), (), 1)]
        for g, kg in enumerate(k):
            nxt = []
            for left, right, c in parts:
                for jg in range(kg + 1):
                    nxt.append((left + (jg,), right + (kg - jg,), c * comb(kg, jg)))
            parts = nxt
        for left, right, c in parts:
            out[(self.mono_index(left), self.mono_index(right))] = q(c)
        self._cop[i] = out
        return out

    def coproduct(self, u: Mapping) -> Tensor2:
        out: Tensor2 = {}
        for i, a in u.items():
            axpy(out, a, self.mono_coproduct(i))
        return out

    def iterated_coproduct(self, u: Mapping) -> Tensor3:
        """``(Δ ⊗ id) Δ(u)``."""
        out: Tensor3 = {}
        for (i, j), a in self.coproduct(u).items():
            for (k, l), b in self.mono_coproduct(i).items():
                axpy(out, a * b, {(k, l, j): ONE})
        return out

    def iterated_coproduct_right(self, u: Mapping) -> Tensor3:
        """``(id ⊗ Δ) Δ(u)``."""
        out: Tensor3 = {}
        for (i, j), a in self.coproduct(u).items():
            for (k, l), b in self.mono_coproduct(j).items():
                axpy(out, a * b, {(i, k, l): ONE})
        return out

    # -- action on A ------------------------------------------------------

    def action_matrix(self, i: int) -> Mat:
        """Matrix of monomial ``i`` acting on ``A`` as ``ω(w_1)∘...∘ω(w_k)``."""
        hit = self._act.get(i)
        if hit is not None:
            return hit
        word = self.words[i]
        if not word:
            m = Mat.identity(self.lie.base.dim)
        else:
            m = self.lie.anchor[word[0]]
            for w in word[1:]:
                m = m @ self.lie.anchor[w]
        self._act[i] = m
        return m

    def act(self, u: Mapping, a: Mapping) -> Vec:
        out: Vec = {}
        for i, c in u.items():
            axpy(out, c, self.action_matrix(i).apply(a))
        return out

    def __repr__(self) -> str:
        return f"<Envelope F_{self.N}(U({self.lie.name})) dim {self.dim}>"


def normal_order(env: Envelope, u: Mapping, v: Mapping) -> EnvElement:
    """PBW normal form of ``u v``; raises DegreeOverflow past the bound."""
    return env.mul(u, v)


def coproduct(env: Envelope, u: Mapping) -> Tensor2:
    return env.coproduct(u)


def iterated_coproduct(env: Envelope, u: Mapping) -> Tensor3:
    return env.iterated_coproduct(u)


def act_on_A(env: Envelope, u: Mapping, a: Mapping) -> Vec:
    return env.act(u, a)
