"""Rings of h-deformed differential operators Diff_{h,sigma}(n).

Elements are kept in the normal form "all d-generators left of all
x-generators, each species in descending index, coefficients from the weight
field on the far left".  A second ("module") ordering with x left of d is
provided for evaluating on lowest weight vectors.

Generator words are token lists: ('x', i), ('d', i), or a coefficient RatFun.
"""

from __future__ import annotations

from fractions import Fraction

from .ratfield import Poly, RatFun, eps_vec
from .rmatrix import phi, phi_inv, psi_component


class RingSpec:
    """n together with the sigma vector of the defining relations.

    sigma is not validated here; non-flat specs still define the rewriting
    (normal forms are then order-dependent, which verify_pbw detects).
    """

    __slots__ = ("n", "sigma")

    def __init__(self, n, sigma=None):
        self.n = n
        if sigma is None:
            sigma = tuple(RatFun.zero(n) for _ in range(n))
        sigma = tuple(sigma)
        assert len(sigma) == n
        self.sigma = sigma

    # -- element builders

    def zero(self):
        return NormalElement(self.n, {})

    def one(self):
        return self.coeff(RatFun.one(self.n))

    def coeff(self, f):
        if isinstance(f, (int, Fraction)):
            f = RatFun.const(self.n, f)
        if f.is_zero():
            return self.zero()
        z = (0,) * self.n
        return NormalElement(self.n, {(z, z): f})

    def h(self, i):
        return self.coeff(RatFun.var(self.n, i))

    def x(self, i):
        z = (0,) * self.n
        e = list(z)
        e[i - 1] = 1
        return NormalElement(self.n, {(z, tuple(e)): RatFun.one(self.n)})

    def d(self, i):
        z = (0,) * self.n
        e = list(z)
        e[i - 1] = 1
        return NormalElement(self.n, {(tuple(e), z): RatFun.one(self.n)})

    def gamma(self, i):
        """d_i x^i, already normal."""
        e = [0] * self.n
        e[i - 1] = 1
        e = tuple(e)
        return NormalElement(self.n, {(e, e): RatFun.one(self.n)})

    def __eq__(self, other):
        return (isinstance(other, RingSpec) and self.n == other.n
                and all(a == b for a, b in zip(self.sigma, other.sigma)))

    __hash__ = None

    def __repr__(self):
        return f"RingSpec<n={self.n}, sigma={list(self.sigma)!r}>"


class NormalElement:
    """Finite sum of coeff * d^a x^b monomials, keyed by (a, b) tuples.

    The key (a, b) denotes d_n^{a_n}..d_1^{a_1} x_n^{b_n}..x_1^{b_1}."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms):
        self.n = n
        self.terms = {k: v for k, v in terms.items() if not v.is_zero()}

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, NormalElement):
            return NotImplemented
        if self.n != other.n or set(self.terms) != set(other.terms):
            return False
        return all(self.terms[k] == other.terms[k] for k in self.terms)

    __hash__ = None

    def __add__(self, other):
        assert self.n == other.n
        out = dict(self.terms)
        for k, v in other.terms.items():
            if k in out:
                s = out[k] + v
                if s.is_zero():
                    del out[k]
                else:
                    out[k] = s
            else:
                out[k] = v
        return NormalElement(self.n, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return NormalElement(self.n, {k: -v for k, v in self.terms.items()})

    def scale(self, f):
        """Left multiplication by a coefficient."""
        if isinstance(f, (int, Fraction)):
            f = RatFun.const(self.n, f)
        return NormalElement(self.n, {k: f * v for k, v in self.terms.items()})

    def weights(self):
        """Set of term weights (b - a) as vectors."""
        return {tuple(b - a for a, b in zip(ak, bk)) for ak, bk in self.terms}

    def is_weight_homogeneous(self):
        return len(self.weights()) <= 1

    def filtration_degree(self):
        if not self.terms:
            return -1
        return max(sum(a) + sum(b) for a, b in self.terms)

    def tokens(self):
        """Expand back into a generator word with the coefficient tokens."""
        toks = []
        for (a, b), f in sorted(self.terms.items()):
            toks.append((f, self._mono_tokens(a, b)))
        return toks

    @staticmethod
    def _mono_tokens(a, b):
        w = []
        for i in range(len(a), 0, -1):
            w.extend([('d', i)] * a[i - 1])
        for i in range(len(b), 0, -1):
            w.extend([('x', i)] * b[i - 1])
        return w

    def to_json(self):
        terms = []
        for (a, b), f in sorted(self.terms.items()):
            terms.append({"d": list(a), "x": list(b), "coeff": f.to_json()})
        return {"n": self.n, "terms": terms}

    @classmethod
    def from_json(cls, obj):
        n = int(obj["n"])
        terms = {}
        for t in obj["terms"]:
            key = (tuple(int(v) for v in t["d"]), tuple(int(v) for v in t["x"]))
            terms[key] = RatFun.from_json(n, t["coeff"])
        return cls(n, terms)

    def __repr__(self):
        if not self.terms:
            return "NormalElement<0>"
        bits = []
        for (a, b), f in sorted(self.terms.items()):
            mono = "".join(f"d{i+1}^{m}" if m > 1 else f"d{i+1}"
                           for i, m in reversed(list(enumerate(a))) if m)
            mono += "".join(f"x{i+1}^{m}" if m > 1 else f"x{i+1}"
                            for i, m in reversed(list(enumerate(b))) if m)
            bits.append(f"({f!r})*{mono or '1'}")
        return "NormalElement<" + " + ".join(bits) + ">"


# ---------------------------------------------------------------------------
# the rewriting engine


def _collapse_coeffs(n, coeff, toks):
    """Migrate coefficient tokens to the far left; returns (coeff, generator list).

    Moving a coefficient left across x_j shifts it by -e_j, across d_j by +e_j.
    """
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
    s1, i1 = t1
    s2, i2 = t2
    if s1 == 'x' and s2 == 'd':
        return True
    if s1 == s2 and i1 < i2:
        return True
    return False


def _resolve(spec, t1, t2):
    """Replace the out-of-order pair t1 t2; returns list of token lists."""
    n = spec.n
    s1, i = t1
    s2, j = t2
    if s1 == 'x' and s2 == 'x':
        # x^i x^j -> (h_ij + 1)/h_ij x^j x^i   (i < j)
        hij = RatFun.from_poly(Poly.diff(n, i, j))
        c = (hij + 1) * RatFun.inverse_diff(n, i, j)
        return [[c, ('x', j), ('x', i)]]
    if s1 == 'd' and s2 == 'd':
        # d_i d_j -> (h_ij - 1)/h_ij d_j d_i   (i < j)
        hij = RatFun.from_poly(Poly.diff(n, i, j))
        c = (hij - 1) * RatFun.inverse_diff(n, i, j)
        return [[c, ('d', j), ('d', i)]]
    # x^i d_j
    if i < j:
        return [[('d', j), ('x', i)]]
    if i > j:
        # h_ij (h_ij - 2) / (h_ij - 1)^2 d_j x^i
        hij = RatFun.from_poly(Poly.diff(n, i, j))
        c = hij * (hij - 2) * (RatFun.inverse_diff(n, i, j, -1) ** 2)
        return [[c, ('d', j), ('x', i)]]
    # x^i d_i -> sum_j 1/(1 - h_ij) d_j x^j - sigma_i
    out = []
    for k in range(1, n + 1):
        if k == i:
            out.append([('d', i), ('x', i)])
        else:
            # 1/(1 - h_ik) = 1/(h_k - h_i + 1)
            out.append([RatFun.inverse_diff(n, k, i, 1), ('d', k), ('x', k)])
    out.append([-spec.sigma[i - 1]])
    return out


def normal_form(spec, word, strategy="left"):
    """Normal-order a token word (iterable of ('x', i) / ('d', i) / RatFun).

    strategy picks which defect to rewrite first; any strategy gives the same
    result exactly when sigma is flat."""
    n = spec.n
    acc = {}
    stack = [(RatFun.one(n), list(word))]
    while stack:
        coeff, toks = stack.pop()
        coeff, gens = _collapse_coeffs(n, coeff, toks)
        if coeff.is_zero():
            continue
        idx = None
        rng = range(len(gens) - 1)
        for p in (rng if strategy == "left" else reversed(rng)):
            if _is_defect(gens[p], gens[p + 1]):
                idx = p
                break
        if idx is None:
            a = [0] * n
            b = [0] * n
            for s, i in gens:
                (a if s == 'd' else b)[i - 1] += 1
            key = (tuple(a), tuple(b))
            prev = acc.get(key)
            tot = coeff if prev is None else prev + coeff
            if tot.is_zero():
                acc.pop(key, None)
            else:
                acc[key] = tot
            continue
        head, tail = gens[:idx], gens[idx + 2:]
        for repl in _resolve(spec, gens[idx], gens[idx + 1]):
            stack.append((coeff, head + repl + tail))
    return NormalElement(n, acc)


def multiply(spec, a, b):
    """Product of two normal elements, re-normal-ordered."""
    n = spec.n
    out = NormalElement(n, {})
    for (am, bm), fa in a.terms.items():
        mono_a = NormalElement._mono_tokens(am, bm)
        for (an, bn), fb in b.terms.items():
            word = mono_a + [fb] + NormalElement._mono_tokens(an, bn)
            out = out + normal_form(spec, word).scale(fa)
    return out


def commutator(spec, a, b):
    return multiply(spec, a, b) - multiply(spec, b, a)


# ---------------------------------------------------------------------------
# the opposite ("module") order: x left of d, for acting on lowest weights


def _is_defect_module(t1, t2):
    s1, i1 = t1
    s2, i2 = t2
    if s1 == 'd' and s2 == 'x':
        return True
    if s1 == s2 and i1 < i2:
        return True
    return False


def _resolve_module(spec, t1, t2):
    n = spec.n
    s1, j = t1
    s2, i = t2
    if s1 == s2:
        return _resolve(spec, t1, t2)
    # d_j x^i -> sum_{k,l} Psi^{ik}_{jl} x^l d_k + sum_k Psi^{ik}_{jk} sigma_k
    if j != i:
        return [[psi_component(n, i, j, j, i), ('x', i), ('d', j)]]
    out = []
    free = RatFun.zero(n)
    for k in range(1, n + 1):
        c = psi_component(n, i, k, i, k)
        out.append([c, ('x', k), ('d', k)])
        free = free + c * spec.sigma[k - 1]
    out.append([free])
    return out


def module_form(spec, word, strategy="left"):
    """Order a word with x left of d (both descending).  Used for module
    actions: terms still containing d annihilate a lowest weight vector."""
    n = spec.n
    acc = {}
    stack = [(RatFun.one(n), list(word))]
    while stack:
        coeff, toks = stack.pop()
        coeff, gens = _collapse_coeffs(n, coeff, toks)
        if coeff.is_zero():
            continue
        idx = None
        rng = range(len(gens) - 1)
        for p in (rng if strategy == "left" else reversed(rng)):
            if _is_defect_module(gens[p], gens[p + 1]):
                idx = p
                break
        if idx is None:
            a = [0] * n
            b = [0] * n
            for s, i in gens:
                (a if s == 'd' else b)[i - 1] += 1
            key = (tuple(a), tuple(b))
            prev = acc.get(key)
            tot = coeff if prev is None else prev + coeff
            if tot.is_zero():
                acc.pop(key, None)
            else:
                acc[key] = tot
            continue
        head, tail = gens[:idx], gens[idx + 2:]
        for repl in _resolve_module(spec, gens[idx], gens[idx + 1]):
            stack.append((coeff, head + repl + tail))
    return acc  # dict (a, b) -> coeff, with coeff left of x^b d^a


def element_to_module_terms(spec, elem):
    """Rewrite a normal element in the module order."""
    n = spec.n
    acc = {}
    for (a, b), f in elem.terms.items():
        word = [f] + NormalElement._mono_tokens(a, b)
        for key, c in module_form(spec, word).items():
            prev = acc.get(key)
            tot = c if prev is None else prev + c
            if tot.is_zero():
                acc.pop(key, None)
            else:
                acc[key] = tot
    return acc


def module_terms_to_element(spec, terms):
    """Inverse of element_to_module_terms (re-normal-orders x^b d^a words)."""
    n = spec.n
    out = NormalElement(n, {})
    for (a, b), f in terms.items():
        word = [f]
        for i in range(n, 0, -1):
            word.extend([('x', i)] * b[i - 1])
        for i in range(n, 0, -1):
            word.extend([('d', i)] * a[i - 1])
        out = out + normal_form(spec, word)
    return out


# ---------------------------------------------------------------------------
# anti-automorphism


def epsilon_antiauto(spec, elem):
    """The involutive anti-automorphism: fixes the weight field,
    d_i -> phi_i x^i and x^i -> d_i phi_i^{-1}."""
    n = spec.n
    out = NormalElement(n, {})
    for (a, b), f in elem.terms.items():
        word = []
        # reverse of d_n^{a_n}..d_1^{a_1} x_n^{b_n}..x_1^{b_1}
        for i in range(1, n + 1):
            for _ in range(b[i - 1]):
                word.extend([('d', i), phi_inv(n, i)])
        for i in range(1, n + 1):
            for _ in range(a[i - 1]):
                word.extend([phi(n, i), ('x', i)])
        word.append(f)
        out = out + normal_form(spec, word)
    return out


# ---------------------------------------------------------------------------
# PBW / flatness verification


class PBWReport:
    """Double-reduction results and the difference-system results, compared."""

    def __init__(self, n, direct, system):
        self.n = n
        self.direct = direct
        self.system = system

    @property
    def direct_flat(self):
        return all(ok for _, ok in self.direct)

    @property
    def system_flat(self):
        return all(ok for _, ok in self.system)

    @property
    def agree(self):
        return self.direct_flat == self.system_flat

    @property
    def flat(self):
        return self.direct_flat and self.system_flat

    def summary(self):
        return (f"pbw n={self.n}: double-reduction "
                f"{'pass' if self.direct_flat else 'FAIL'}, sigma-system "
                f"{'pass' if self.system_flat else 'FAIL'}"
                + ("" if self.agree else " [routes disagree]"))


def verify_pbw(spec):
    """Two independent flatness checks.

    (a) normal-order the overlap words x^i d_j d_k and x^j x^k d_i with both
        reduction strategies and compare;
    (b) the closed difference system h_ij Delta_j sigma_i = sigma_i - sigma_j.
    """
    n = spec.n
    direct = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                w = [('x', i), ('d', j), ('d', k)]
                same = normal_form(spec, w, "left") == normal_form(spec, w, "right")
                direct.append((("xdd", i, j, k), same))
                w = [('x', j), ('x', k), ('d', i)]
                same = normal_form(spec, w, "left") == normal_form(spec, w, "right")
                direct.append((("xxd", i, j, k), same))
    system = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                system.append(((i, j), True))
                continue
            lhs = RatFun.from_poly(Poly.diff(n, i, j)) * spec.sigma[i - 1].delta(j)
            ok = (lhs - spec.sigma[i - 1] + spec.sigma[j - 1]).is_zero()
            system.append(((i, j), ok))
    return PBWReport(n, direct, system)


# ---------------------------------------------------------------------------
# generator assignments (homomorphism checks)


class GeneratorAssignment:
    """Images of the generators under a candidate (iso)morphism.

    x_images/d_images: target-ring normal elements; the weight variables map
    by h_i -> h_{perm[i]} + const[i] (integer constants).
    """

    __slots__ = ("x_images", "d_images", "perm", "consts")

    def __init__(self, x_images, d_images, perm=None, consts=None):
        n = len(x_images)
        self.x_images = list(x_images)
        self.d_images = list(d_images)
        self.perm = tuple(perm) if perm else tuple(range(1, n + 1))
        self.consts = tuple(consts) if consts else (0,) * n

    def map_coeff(self, f):
        g = f.permuted(self.perm)
        if any(self.consts):
            svec = [0] * len(self.consts)
            for i, c in enumerate(self.consts):
                svec[self.perm[i] - 1] = c
            g = g.shift(tuple(svec))
        return g


def check_assignment(src, dst, assign):
    """Verify that the assignment maps every defining relation of src to zero
    in dst.  Returns a CheckReport-style list of (label, ok)."""
    n = src.n
    results = []
    X = assign.x_images
    D = assign.d_images
    mc = assign.map_coeff

    # weight homogeneity: image of x^i must have weight e_{perm(i)}, image of
    # d_i weight -e_{perm(i)} (so the weight relations map consistently)
    for i in range(1, n + 1):
        wx = X[i - 1].weights()
        ok = wx <= {tuple(eps_vec(n, assign.perm[i - 1]))}
        results.append((("weight-x", i), ok))
        wd = D[i - 1].weights()
        ok = wd <= {tuple(eps_vec(n, assign.perm[i - 1], -1))}
        results.append((("weight-d", i), ok))

    one = RatFun.one(n)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            hij = RatFun.from_poly(Poly.diff(n, i, j))
            cxx = mc((hij + 1) * RatFun.inverse_diff(n, i, j))
            lhs = multiply(dst, X[i - 1], X[j - 1]) \
                - multiply(dst, X[j - 1], X[i - 1]).scale(cxx)
            results.append((("xx", i, j), lhs.is_zero()))
            cdd = mc((hij - 1) * RatFun.inverse_diff(n, i, j))
            lhs = multiply(dst, D[i - 1], D[j - 1]) \
                - multiply(dst, D[j - 1], D[i - 1]).scale(cdd)
            results.append((("dd", i, j), lhs.is_zero()))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            if i < j:
                c = one
            else:
                hij = RatFun.from_poly(Poly.diff(n, i, j))
                c = mc(hij * (hij - 2) * (RatFun.inverse_diff(n, i, j, -1) ** 2))
            lhs = multiply(dst, X[i - 1], D[j - 1]) \
                - multiply(dst, D[j - 1], X[i - 1]).scale(c)
            results.append((("xd", i, j), lhs.is_zero()))
    for i in range(1, n + 1):
        lhs = multiply(dst, X[i - 1], D[i - 1])
        for k in range(1, n + 1):
            if k == i:
                c = one
            else:
                c = mc(RatFun.inverse_diff(n, k, i, 1))
            lhs = lhs - multiply(dst, D[k - 1], X[k - 1]).scale(c)
        lhs = lhs + dst.coeff(mc(src.sigma[i - 1]))
        results.append((("xd-diag", i), lhs.is_zero()))
    return results


def zhelobenko_assignment(spec, i):
    """The step-i candidate symmetry: acts by the transposition (i, i+1) on
    the weight variables; an endomorphism of Diff_{h,sigma} iff sigma is
    polynomial (checked via check_assignment)."""
    n = spec.n
    assert 1 <= i < n
    perm = list(range(1, n + 1))
    perm[i - 1], perm[i] = perm[i], perm[i - 1]
    X = []
    D = []
    for j in range(1, n + 1):
        if j == i:
            # x^i -> -x^{i+1} h_{i,i+1}/(h_{i,i+1} - 1), coefficient on the right
            f = RatFun.from_poly(Poly.diff(n, i, i + 1)) \
                * RatFun.inverse_diff(n, i, i + 1, -1)
            X.append(normal_form(spec, [('x', i + 1), -f]))
            # d_i -> -(h_{i,i+1} - 1)/h_{i,i+1} d_{i+1}
            g = RatFun.from_poly(Poly.diff(n, i, i + 1, -1)) \
                * RatFun.inverse_diff(n, i, i + 1)
            D.append(spec.d(i + 1).scale(-g))
        elif j == i + 1:
            X.append(spec.x(i))
            D.append(spec.d(i))
        else:
            X.append(spec.x(j))
            D.append(spec.d(j))
    return GeneratorAssignment(X, D, perm=perm)


def scaling_assignment(spec, gamma):
    """x^i -> x^i, d_i -> gamma d_i: maps Diff_{h,sigma} into Diff_{h,sigma/gamma}."""
    n = spec.n
    X = [spec.x(i) for i in range(1, n + 1)]
    D = [spec.d(i).scale(RatFun.const(n, gamma)) for i in range(1, n + 1)]
    return GeneratorAssignment(X, D)


def localized_coordinates_commute(spec):
    """The rescaled coordinates x^i psi'_i commute pairwise inside the ring."""
    from .rmatrix import psi_prime
    n = spec.n
    elems = []
    for i in range(1, n + 1):
        elems.append(normal_form(spec, [('x', i), psi_prime(n, i)]))
    results = []
    for i in range(n):
        for j in range(i + 1, n):
            c = multiply(spec, elems[i], elems[j]) - multiply(spec, elems[j], elems[i])
            results.append(((i + 1, j + 1), c.is_zero()))
    return results
