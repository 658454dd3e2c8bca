"""Group constructors, the group-expression language and the survey corpus.

Expressions::

    C(12)            Abelian(2, 6)      D(8)        Q(16)      Dic(3)
    S(4)   A(5)      ES(3, '+')         ES32('-')   ES(3, 2, '+')
    ZM(7, 3, 2)      PQ(3, 7)           C(3) X S(3)
    File(path/to/generators.txt)

``X`` is the direct product and associates to the left.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import reduce
from typing import Union

import numpy as np

from .errors import ClosureExceedsCap, InvalidSpec, SpecSyntaxError
from .group import (
    ElementSet,
    GroupTable,
    center,
    default_order_cap,
    direct_product,
    from_cayley_table,
    from_generators,
    quotient,
)
from .perms import read_generator_file

# ---------------------------------------------------------------------------
# raw constructors


def cyclic(n: int) -> GroupTable:
    a = np.arange(n)
    return from_cayley_table((a[:, None] + a[None, :]) % n)


def abelian(*factors: int) -> GroupTable:
    return reduce(direct_product, (cyclic(d) for d in factors), cyclic(1))


def dihedral(order: int) -> GroupTable:
    """Dihedral group of the given (even) order; ``r^i s^j`` has index ``i + n*j``."""
    n = order // 2
    idx = np.arange(order)
    i, j = idx % n, idx // n
    sign = np.where(j == 1, -1, 1)
    rot = (i[:, None] + sign[:, None] * i[None, :]) % n
    ref = (j[:, None] + j[None, :]) % 2
    return from_cayley_table(rot + n * ref)


def dicyclic(n: int) -> GroupTable:
    """Dicyclic group of order 4n: <a, x | a^2n = 1, x^2 = a^n, x^-1 a x = a^-1>."""
    m = 2 * n
    idx = np.arange(2 * m)
    i, j = idx % m, idx // m
    # a^i x^j . a^k x^l = a^(i + (-1)^j k) x^(j+l), with x^2 = a^n
    k, l = i[None, :], j[None, :]
    ii, jj = i[:, None], j[:, None]
    exp_a = ii + np.where(jj == 1, -k, k) + np.where((jj + l) == 2, n, 0)
    exp_x = (jj + l) % 2
    return from_cayley_table(exp_a % m + m * exp_x)


def metacyclic(m: int, n: int, r: int) -> GroupTable:
    """<a, b | a^m = b^n = 1, b^-1 a b = a^r>; ``a^i b^j`` has index ``i + m*j``.

    Needs ``r^n = 1 (mod m)`` so the presentation has order exactly mn.
    """
    if m == 1:
        return cyclic(n)
    s = pow(r, -1, m)  # b a b^-1 = a^s
    spow = np.array([pow(s, j, m) for j in range(n)])
    idx = np.arange(m * n)
    i, j = idx % m, idx // m
    exp_a = (i[:, None] + i[None, :] * spow[j][:, None]) % m
    exp_b = (j[:, None] + j[None, :]) % n
    return from_cayley_table(exp_a + m * exp_b)


def symmetric(n: int) -> GroupTable:
    if n <= 1:
        return cyclic(1)
    if n == 2:
        return from_generators(2, ["(1 2)"])
    return from_generators(n, ["(" + " ".join(map(str, range(1, n + 1))) + ")", "(1 2)"])


def alternating(n: int) -> GroupTable:
    if n <= 2:
        return cyclic(1)
    gens = ["(1 2 %d)" % k for k in range(3, n + 1)]
    return from_generators(n, gens)


def heisenberg(p: int) -> GroupTable:
    """Upper unitriangular 3x3 matrices over GF(p); exponent p for odd p."""
    idx = np.arange(p**3)
    a, b, c = idx % p, (idx // p) % p, idx // (p * p)
    na = (a[:, None] + a[None, :]) % p
    nb = (b[:, None] + b[None, :]) % p
    nc = (c[:, None] + c[None, :] + a[:, None] * b[None, :]) % p
    return from_cayley_table(na + p * nb + p * p * nc)


def extraspecial_p3(p: int, sign: str) -> GroupTable:
    if p == 2:
        return dihedral(8) if sign == "+" else dicyclic(2)
    if sign == "+":
        return heisenberg(p)
    return metacyclic(p * p, p, 1 + p)


def central_product(G: GroupTable, H: GroupTable, p: int) -> GroupTable:
    """Glue G and H along central subgroups of order p.

    Quotients G x H by the diagonal ``{(z^i, w^-i)}`` where z, w are the
    smallest-index central elements of order p.
    """
    def central_of_order_p(K):
        Z = center(K)
        for z in Z.indices():
            if K.element_orders[z] == p:
                return z
        raise InvalidSpec("central product needs a central element of order p")

    z, w = central_of_order_p(G), central_of_order_p(H)
    # only the quotient is subject to the order cap
    P = direct_product(G, H, cap=G.n * H.n)
    diag = []
    zi, wi = 0, 0
    for _ in range(p):
        diag.append(zi * H.n + int(H.inv[wi]))
        zi, wi = int(G.mul[zi, z]), int(H.mul[wi, w])
    return quotient(P, ElementSet.from_indices(diag))


def extraspecial(p: int, k: int, sign: str) -> GroupTable:
    """Extraspecial group of order p^(1+2k): central product of k order-p^3 pieces.

    '+' uses k copies of ES(p, '+'); '-' swaps one copy for ES(p, '-').
    """
    first = extraspecial_p3(p, sign)
    G = first
    for _ in range(k - 1):
        G = central_product(G, extraspecial_p3(p, "+"), p)
    return G


# ---------------------------------------------------------------------------
# expression trees


@dataclass(frozen=True)
class Ctor:
    name: str
    args: tuple

    def __str__(self):
        return f"{self.name}({', '.join(_fmt_arg(a) for a in self.args)})"


@dataclass(frozen=True)
class Product:
    left: "GroupSpec"
    right: "GroupSpec"

    def __str__(self):
        return f"{self.left} X {self.right}"


@dataclass(frozen=True)
class FileSpec:
    path: str

    def __str__(self):
        return f"File({self.path})"


GroupSpec = Union[Ctor, Product, FileSpec]


def _fmt_arg(a):
    return f"'{a}'" if isinstance(a, str) else str(a)


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


def _ints(name, args, count=None):
    if count is not None and len(args) != count:
        raise InvalidSpec(f"{name} takes {count} integer argument(s), got {len(args)}")
    if not all(isinstance(a, int) for a in args):
        raise InvalidSpec(f"{name} arguments must be integers")


def _sign(name, a):
    if a not in ("+", "-"):
        raise InvalidSpec(f"{name} sign must be '+' or '-', got {a!r}")


def zm_violation(m: int, n: int, r: int) -> str | None:
    if m < 1 or n < 1:
        return "m and n must be positive"
    if math.gcd(m, n) != 1:
        return f"gcd(m, n) = gcd({m}, {n}) = {math.gcd(m, n)} != 1"
    if math.gcd((r - 1) * n, m) != 1:
        return f"gcd((r-1)n, m) = gcd({(r - 1) * n}, {m}) = {math.gcd((r - 1) * n, m)} != 1"
    if pow(r, n, m) != 1 % m:
        return f"r^n = {r}^{n} = {pow(r, n, m)} (mod {m}), not 1"
    return None


def validate(spec: GroupSpec) -> None:
    """Raise :class:`InvalidSpec` if a constructor's arguments are unusable."""
    if isinstance(spec, Product):
        validate(spec.left)
        validate(spec.right)
        return
    if isinstance(spec, FileSpec):
        return
    name, args = spec.name, spec.args
    if name == "C":
        _ints(name, args, 1)
        if args[0] < 1:
            raise InvalidSpec("C(n) needs n >= 1")
    elif name == "Abelian":
        _ints(name, args)
        if not args or any(d < 1 for d in args):
            raise InvalidSpec("Abelian(d1, ..., dk) needs positive factors")
    elif name == "D":
        _ints(name, args, 1)
        if args[0] < 2 or args[0] % 2:
            raise InvalidSpec("D(2n) needs an even order >= 2")
    elif name == "Dic":
        _ints(name, args, 1)
        if args[0] < 1:
            raise InvalidSpec("Dic(n) needs n >= 1")
    elif name == "Q":
        _ints(name, args, 1)
        k = args[0].bit_length() - 1
        if args[0] < 8 or args[0] != 1 << k:
            raise InvalidSpec("Q(2^k) needs a power of two >= 8")
    elif name in ("S", "A"):
        _ints(name, args, 1)
        if not 1 <= args[0] <= 6:
            raise InvalidSpec(f"{name}(n) needs 1 <= n <= 6")
    elif name == "ES":
        if len(args) == 2:
            p, sign = args
            k = 1
        elif len(args) == 3:
            p, k, sign = args
        else:
            raise InvalidSpec("ES takes (p, sign) or (p, k, sign)")
        if not isinstance(p, int) or not isinstance(k, int):
            raise InvalidSpec("ES prime and rank must be integers")
        _sign(name, sign)
        if not _is_prime(p):
            raise InvalidSpec(f"ES needs a prime, got {p}")
        if k < 1:
            raise InvalidSpec("ES rank must be >= 1")
    elif name == "ES32":
        if len(args) != 1:
            raise InvalidSpec("ES32 takes a single sign")
        _sign(name, args[0])
    elif name == "ZM":
        _ints(name, args, 3)
        why = zm_violation(*args)
        if why:
            raise InvalidSpec(f"ZM{args}: {why}")
    elif name == "PQ":
        _ints(name, args, 2)
        p, q = args
        if not (_is_prime(p) and _is_prime(q)) or p == q:
            raise InvalidSpec(f"PQ(p, q) needs distinct primes, got ({p}, {q})")
        if q % p != 1:
            raise InvalidSpec(f"PQ({p}, {q}): q = {q} is not 1 mod p = {p}, so no nonabelian group exists")
    else:
        raise InvalidSpec(f"unknown constructor {name!r}")


def spec_order(spec: GroupSpec) -> int:
    if isinstance(spec, Product):
        return spec_order(spec.left) * spec_order(spec.right)
    if isinstance(spec, FileSpec):
        return build(spec).n
    name, args = spec.name, spec.args
    if name == "C":
        return args[0]
    if name == "Abelian":
        return math.prod(args)
    if name in ("D", "Q"):
        return args[0]
    if name == "Dic":
        return 4 * args[0]
    if name == "S":
        return math.factorial(args[0])
    if name == "A":
        return max(1, math.factorial(args[0]) // 2)
    if name == "ES":
        k = args[1] if len(args) == 3 else 1
        return args[0] ** (1 + 2 * k)
    if name == "ES32":
        return 32
    if name == "ZM":
        return args[0] * args[1]
    if name == "PQ":
        return args[0] * args[1]
    raise InvalidSpec(f"unknown constructor {name!r}")


def pq_root(p: int, q: int) -> int:
    """Smallest r > 1 of multiplicative order p modulo q."""
    for r in range(2, q):
        if pow(r, p, q) == 1:
            return r
    raise InvalidSpec(f"no element of order {p} mod {q}")


def build(spec: GroupSpec | str, cap: int | None = None) -> GroupTable:
    if isinstance(spec, str):
        spec = parse_spec(spec)
    validate(spec)
    cap = default_order_cap() if cap is None else cap
    if not isinstance(spec, FileSpec):
        order = spec_order(spec)
        if order > cap:
            raise ClosureExceedsCap(f"{spec} has order {order}, above the cap {cap}")
    return _build(spec, cap)


def _build(spec: GroupSpec, cap: int) -> GroupTable:
    if isinstance(spec, Product):
        return direct_product(_build(spec.left, cap), _build(spec.right, cap), cap)
    if isinstance(spec, FileSpec):
        degree, gens = read_generator_file(spec.path)
        return from_generators(degree, gens, cap)
    name, args = spec.name, spec.args
    if name == "C":
        return cyclic(args[0])
    if name == "Abelian":
        return abelian(*args)
    if name == "D":
        return dihedral(args[0])
    if name == "Dic":
        return dicyclic(args[0])
    if name == "Q":
        return dicyclic(args[0] // 4)
    if name == "S":
        return symmetric(args[0])
    if name == "A":
        return alternating(args[0])
    if name == "ES":
        if len(args) == 2:
            return extraspecial_p3(args[0], args[1])
        return extraspecial(*args)
    if name == "ES32":
        return extraspecial(2, 2, args[0])
    if name == "ZM":
        return metacyclic(*args)
    if name == "PQ":
        p, q = args
        return metacyclic(q, p, pq_root(p, q))
    raise InvalidSpec(f"unknown constructor {name!r}")


# ---------------------------------------------------------------------------
# parsing

class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg, pos=None):
        raise SpecSyntaxError(msg, self.text, self.pos if pos is None else pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, ch):
        self.skip_ws()
        if self.text.startswith(ch, self.pos):
            self.pos += len(ch)
        else:
            self.error(f"expected {ch!r}")

    def parse(self) -> GroupSpec:
        node = self.term()
        while True:
            self.skip_ws()
            m = re.compile(r"X(?![A-Za-z_0-9])").match(self.text, self.pos)
            if not m:
                break
            self.pos = m.end()
            node = Product(node, self.term())
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("unexpected trailing input")
        return node

    def term(self) -> GroupSpec:
        self.skip_ws()
        m = re.compile(r"[A-Za-z_][A-Za-z_0-9]*").match(self.text, self.pos)
        if not m:
            self.error("expected a constructor name")
        name = m.group()
        self.pos = m.end()
        if name == "File":
            self.expect("(")
            depth, begin = 1, self.pos
            while self.pos < len(self.text):
                ch = self.text[self.pos]
                depth += ch == "("
                depth -= ch == ")"
                if depth == 0:
                    break
                self.pos += 1
            if depth:
                self.error("unterminated File(")
            path = self.text[begin:self.pos].strip().strip("'\"")
            self.pos += 1
            if not path:
                self.error("empty path", begin)
            return FileSpec(path)
        self.expect("(")
        args = []
        self.skip_ws()
        if self.text.startswith(")", self.pos):
            self.pos += 1
        else:
            while True:
                args.append(self.arg())
                self.skip_ws()
                if self.text.startswith(",", self.pos):
                    self.pos += 1
                    continue
                if self.text.startswith(")", self.pos):
                    self.pos += 1
                    break
                self.error("expected ',' or ')'")
        return Ctor(name, tuple(args))

    def arg(self):
        self.skip_ws()
        m = re.compile(r"-?\d+|'[+-]'|\"[+-]\"|[+-]").match(self.text, self.pos)
        if not m:
            self.error("expected an integer or a sign")
        self.pos = m.end()
        tok = m.group()
        if tok.lstrip("-").isdigit():
            return int(tok)
        return tok.strip("'\"")


def parse_spec(text: str) -> GroupSpec:
    """Parse and validate a group expression."""
    spec = _Parser(text).parse()
    validate(spec)
    return spec


def load_generator_file(path) -> GroupSpec:
    read_generator_file(path)  # fail early on malformed files
    return FileSpec(str(path))


# ---------------------------------------------------------------------------
# corpus

# (m, n, r) triples for the metacyclic presentation; all satisfy the ZM conditions
ZM_TRIPLES = [
    (3, 2, 2), (5, 2, 4), (3, 4, 2), (7, 2, 6), (5, 4, 2), (7, 3, 2), (3, 8, 2),
    (3, 10, 2), (13, 3, 3), (7, 6, 2), (7, 6, 3), (21, 2, 20), (13, 4, 5),
    (11, 5, 3), (19, 3, 7), (31, 3, 5),
]


def invariant_factor_lists(n: int) -> list[tuple[int, ...]]:
    """All (d1, ..., dk) with d1 | d2 | ... | dk, each > 1, product n."""
    out = []

    def rec(remaining, prefix):
        if remaining == 1:
            out.append(tuple(reversed(prefix)))
            return
        last = prefix[-1] if prefix else None
        for d in range(2, remaining + 1):
            if remaining % d == 0 and (last is None or last % d == 0):
                rec(remaining // d, prefix + [d])

    if n == 1:
        return [()]
    # build largest factor first so each new factor divides the previous one
    rec(n, [])
    return sorted(out, key=lambda t: (len(t), t))


def survey_corpus(max_order: int) -> list[GroupSpec]:
    """Deterministic constructor-based corpus of groups of order <= max_order."""
    specs: list[GroupSpec] = []
    seen: set[str] = set()

    def add(text):
        if text not in seen:
            spec = parse_spec(text)
            if spec_order(spec) <= max_order:
                seen.add(text)
                specs.append(spec)

    for n in range(1, max_order + 1):
        add(f"C({n})")
    for n in range(1, max_order + 1):
        for factors in invariant_factor_lists(n):
            if len(factors) >= 2:
                add("Abelian(" + ", ".join(map(str, factors)) + ")")
    for order in range(6, max_order + 1, 2):
        add(f"D({order})")
    k = 8
    while k <= max_order:
        add(f"Q({k})")
        k *= 2
    for n in range(3, max_order // 4 + 1):
        add(f"Dic({n})")
    for n in range(3, 7):
        add(f"S({n})")
    for n in range(4, 7):
        add(f"A({n})")
    for p in range(2, max_order + 1):
        for q in range(p + 1, max_order // max(p, 1) + 1):
            if _is_prime(p) and _is_prime(q) and q % p == 1:
                add(f"PQ({p}, {q})")
    for m, n, r in ZM_TRIPLES:
        add(f"ZM({m}, {n}, {r})")
    for p in (2, 3, 5, 7):
        for sign in "+-":
            add(f"ES({p}, '{sign}')")
    for sign in "+-":
        add(f"ES32('{sign}')")
    for p in (2, 3):
        for sign in "+-":
            add(f"ES({p}, 2, '{sign}')")
    for extra in ("C(2) X PQ(2, 3)", "C(3) X PQ(3, 7)", "C(2) X PQ(2, 5)", "C(3) X S(3)",
                  "D(8) X C(2)", "Q(8) X C(2)", "D(8) X C(3)", "Q(8) X C(3)", "ES(3, '+') X C(2)",
                  "A(4) X C(2)", "S(3) X S(3)", "D(8) X C(2) X C(2)"):
        add(extra)
    return specs
