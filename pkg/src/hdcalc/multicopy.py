"""Several commuting copies of the coordinate generators.

Generators x^{i,a} (a = 1..nx) and d_{j,b} (b = 1..nd) over the same weight
variables.  Same-copy pairs obey the one-copy rules; cross-copy pairs reorder
through the R-matrix, and x-d pairs through the R-shifted oscillator rule with
a zero-order array sigma_{i,a,b}.  Once more than one copy of either species
is present, flatness forces every sigma entry to be a constant.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .ratfield import RatFun, Poly, eps_vec, rank_exact
from .rmatrix import r_component, CheckReport
from .potential import sigma_system_check


class SigmaArray:
    """Zero-order terms sigma_{i,a,b}: i = 1..n, a = 1..nx, b = 1..nd."""

    __slots__ = ("n", "nx", "nd", "entries")

    def __init__(self, n, nx, nd, entries=None):
        self.n = n
        self.nx = nx
        self.nd = nd
        ent = {}
        for (i, a, b), v in (entries or {}).items():
            assert 1 <= i <= n and 1 <= a <= nx and 1 <= b <= nd, (i, a, b)
            if not v.is_zero():
                ent[(i, a, b)] = v
        self.entries = ent

    @classmethod
    def constant(cls, n, nx, nd, values):
        """values: dict (a, b) -> scalar, or a single scalar for all pairs."""
        if not isinstance(values, dict):
            values = {(a, b): values
                      for a in range(1, nx + 1) for b in range(1, nd + 1)}
        ent = {}
        for (a, b), c in values.items():
            for i in range(1, n + 1):
                ent[(i, a, b)] = RatFun.const(n, Fraction(c))
        return cls(n, nx, nd, ent)

    @classmethod
    def from_one_copy(cls, sigma):
        n = len(sigma)
        return cls(n, 1, 1, {(i, 1, 1): sigma[i - 1] for i in range(1, n + 1)})

    def get(self, i, a, b):
        return self.entries.get((i, a, b), RatFun.zero(self.n))

    def family(self, a, b):
        """The tuple (sigma_{1ab}, ..., sigma_{nab})."""
        return tuple(self.get(i, a, b) for i in range(1, self.n + 1))

    def to_json(self):
        ent = [{"i": i, "alpha": a, "beta": b, "value": v.to_json()}
               for (i, a, b), v in sorted(self.entries.items())]
        return {"n": self.n, "copies": [self.nd, self.nx], "entries": ent}

    @classmethod
    def from_json(cls, obj):
        n = int(obj["n"])
        nd, nx = (int(v) for v in obj["copies"])
        ent = {}
        for e in obj["entries"]:
            key = (int(e["i"]), int(e["alpha"]), int(e["beta"]))
            ent[key] = RatFun.from_json(n, e["value"])
        return cls(n, nx, nd, ent)

    def constant_values(self):
        """dict (a, b) -> scalar if every entry is an i-independent constant,
        else None."""
        out = {}
        for a in range(1, self.nx + 1):
            for b in range(1, self.nd + 1):
                vals = set()
                for i in range(1, self.n + 1):
                    c = self.get(i, a, b).const_value()
                    if c is None:
                        return None
                    vals.add(c)
                if len(vals) != 1:
                    return None
                out[(a, b)] = vals.pop()
        return out

    def __repr__(self):
        return (f"SigmaArray<n={self.n} nx={self.nx} nd={self.nd} "
                f"{len(self.entries)} entries>")


def constant_profile(s):
    """Rank and diagonal profile of a constant sigma matrix, or None.

    A constant nx-by-nd matrix can be brought to diagonal form by changes of
    basis in the copies; only the rank survives."""
    vals = s.constant_values()
    if vals is None:
        return None
    rows = [[vals[(a, b)] for b in range(1, s.nd + 1)]
            for a in range(1, s.nx + 1)]
    r = rank_exact(rows)
    return r, tuple([1] * r + [0] * (min(s.nx, s.nd) - r))


# ---------------------------------------------------------------------------
# mixed rewriting over tokens ('x', i, a) / ('d', j, b) / RatFun


def _collapse(n, coeff, toks):
    gens = []
    svec = [0] * n
    for t in toks:
        if isinstance(t, RatFun):
            if any(svec):
                t = t.shift(tuple(svec))
            coeff = coeff * t
        else:
            gens.append(t)
            if t[0] == 'x':
                svec[t[1] - 1] -= 1
            else:
                svec[t[1] - 1] += 1
    return coeff, gens


def _is_defect(t1, t2):
    s1, i1, c1 = t1
    s2, i2, c2 = t2
    if s1 == 'x' and s2 == 'd':
        return True
    if s1 == s2 and (c1, -i1) > (c2, -i2):
        return True
    return False


def _resolve(n, sig, t1, t2):
    s1, i1, c1 = t1
    s2, i2, c2 = t2
    if s1 == s2 and c1 == c2:
        # one-copy rule, copy tag carried along
        i, j = i1, i2
        hij = RatFun.from_poly(Poly.diff(n, i, j))
        c = (hij + (1 if s1 == 'x' else -1)) * RatFun.inverse_diff(n, i, j)
        return [[c, (s1, j, c1), (s1, i, c1)]]
    if s1 == 'x' and s2 == 'x':
        # x^{i,c1} x^{j,c2} = sum R^{ij}_{kl} x^{k,c2} x^{l,c1}   (c1 > c2)
        i, j = i1, i2
        if i == j:
            return [[('x', i, c2), ('x', i, c1)]]
        return [[r_component(n, i, j, i, j), ('x', i, c2), ('x', j, c1)],
                [r_component(n, i, j, j, i), ('x', j, c2), ('x', i, c1)]]
    if s1 == 'd' and s2 == 'd':
        # d_{l,c1} d_{k,c2} = sum d_{j,c2} d_{i,c1} R^{ij}_{kl}   (c1 > c2);
        # both coefficients only involve h_k - h_l, so moving them left past
        # the two d's costs no shift
        l, k = i1, i2
        if l == k:
            return [[('d', k, c2), ('d', k, c1)]]
        return [[r_component(n, k, l, k, l), ('d', l, c2), ('d', k, c1)],
                [r_component(n, l, k, k, l), ('d', k, c2), ('d', l, c1)]]
    # x^{i,a} d_{j,b} = sum_{k,l} d_{k,b} R^{ki}_{lj} x^{l,a} - delta_ij sigma
    i, a = i1, c1
    j, b = i2, c2
    if i != j:
        cf = r_component(n, j, i, i, j).shift(eps_vec(n, j))
        return [[cf, ('d', j, b), ('x', i, a)]]
    out = []
    for k in range(1, n + 1):
        cf = r_component(n, k, i, k, i).shift(eps_vec(n, k))
        out.append([cf, ('d', k, b), ('x', k, a)])
    out.append([-sig.get(i, a, b)])
    return out


def mixed_normal_form(n, sig, word, strategy="left"):
    """Normal-order a mixed multi-copy word.

    Returns dict: canonical generator tuple -> RatFun.  Canonical order is
    d-block then x-block, each sorted by (copy, descending index)."""
    acc = {}
    stack = [(RatFun.one(n), list(word))]
    while stack:
        coeff, toks = stack.pop()
        coeff, gens = _collapse(n, coeff, toks)
        if coeff.is_zero():
            continue
        idx = None
        rng = range(len(gens) - 1)
        for p in (rng if strategy == "left" else reversed(rng)):
            if _is_defect(gens[p], gens[p + 1]):
                idx = p
                break
        if idx is None:
            key = tuple(gens)
            prev = acc.get(key)
            tot = coeff if prev is None else prev + coeff
            if tot.is_zero():
                acc.pop(key, None)
            else:
                acc[key] = tot
            continue
        head, tail = gens[:idx], gens[idx + 2:]
        for repl in _resolve(n, sig, gens[idx], gens[idx + 1]):
            stack.append((coeff, head + repl + tail))
    return acc


def vcopy_normal_form(n, ncopies, word, strategy="left"):
    """Normal form in the pure coordinate ring on ncopies copies of the x's."""
    for t in word:
        if not isinstance(t, RatFun):
            assert t[0] == 'x' and 1 <= t[2] <= ncopies, t
    sig = SigmaArray(n, ncopies, 1)
    return mixed_normal_form(n, sig, word, strategy)


# ---------------------------------------------------------------------------
# flatness


def _ysy1_failure(n, fam):
    # R^{ui}_{kj} (sigma_k - sigma_i[-e_u]) = 0 over the nonzero components
    for u in range(1, n + 1):
        for i in range(1, n + 1):
            shifted = fam[i - 1].shift(eps_vec(n, u, -1))
            for (k, j) in {(u, i), (i, u)}:
                r = r_component(n, u, i, k, j)
                if not (r * (fam[k - 1] - shifted)).is_zero():
                    return (u, i, k, j)
    return None


def _ysy2_failure(n, fam):
    # delta^i_j delta^u_k sigma_i = sum_ab R^{ab}_{kj}[-e_i] R^{ui}_{ab}[e_u]
    #                                       sigma_a[e_u]
    for u in range(1, n + 1):
        for i in range(1, n + 1):
            pairs = {(u, i), (i, u)}
            for (k, j) in pairs:
                rhs = RatFun.zero(n)
                for (a, b) in pairs:
                    r1 = r_component(n, a, b, k, j)
                    if r1.is_zero():
                        continue
                    r2 = r_component(n, u, i, a, b)
                    rhs = rhs + (r1.shift(eps_vec(n, i, -1))
                                 * r2.shift(eps_vec(n, u))
                                 * fam[a - 1].shift(eps_vec(n, u)))
                lhs = fam[i - 1] if (i == j and u == k) else RatFun.zero(n)
                if not (lhs - rhs).is_zero():
                    return (u, i, k, j)
    return None


def flatness_check(n, nx, nd, s):
    """PBW flatness of the mixed ring with nx x-copies and nd d-copies.

    With a single copy of each species only the one-copy system on sigma is
    required; with more copies the cross-copy orderings force the sigma
    entries to be constants."""
    assert s.n == n and s.nx == nx and s.nd == nd
    results = []
    multi = max(nx, nd) >= 2
    for a in range(1, nx + 1):
        for b in range(1, nd + 1):
            fam = s.family(a, b)
            ok, pair = sigma_system_check(fam)
            label = f"eqsigib a={a} b={b}"
            results.append((label if ok else label + f" at (i,j)={pair}", ok))
            if not multi:
                continue
            w = _ysy1_failure(n, fam)
            label = f"ysy1 a={a} b={b}"
            results.append((label if w is None
                            else label + f" at (u,i,k,j)={w}", w is None))
            w = _ysy2_failure(n, fam)
            label = f"ysy2 a={a} b={b}"
            results.append((label if w is None
                            else label + f" at (u,i,k,j)={w}", w is None))
    return CheckReport(f"flatness n={n} nx={nx} nd={nd}", results)


# ---------------------------------------------------------------------------
# double-reduction oracle


def _ambiguity_words(n, nx, nd):
    words = []
    idx = range(1, n + 1)
    for i, j, k in itertools.product(idx, repeat=3):
        for a in range(1, nx + 1):
            for b, g in itertools.product(range(1, nd + 1), repeat=2):
                words.append((('x', i, a), ('d', j, b), ('d', k, g)))
        for a, g in itertools.product(range(1, nx + 1), repeat=2):
            for b in range(1, nd + 1):
                words.append((('x', i, a), ('x', j, g), ('d', k, b)))
    return words


def ambiguity_oracle(n, nx, nd, s, budget=200, seed=0):
    """Double-reduce words x d d and x x d with the leftmost-first and the
    rightmost-first strategies and compare.  Disagreement on any word
    witnesses non-flatness."""
    words = _ambiguity_words(n, nx, nd)
    if len(words) > budget:
        words = random.Random(seed).sample(words, budget)
    results = []
    for w in words:
        left = mixed_normal_form(n, s, list(w), "left")
        right = mixed_normal_form(n, s, list(w), "right")
        ok = left == right
        label = " ".join(f"{sp}{i},{c}" for sp, i, c in w)
        results.append((label, ok))
    return CheckReport(f"ambiguity n={n} nx={nx} nd={nd}", results)
