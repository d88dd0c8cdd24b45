"""Factorial commutative semigroups in canonical factored form.

Every element is stored as ``unit_tag * prod(p ** alpha(p))`` with the primes
sorted and no zero exponents, so equality of the dataclass is equality of
semigroup elements. Two backends exist: the naturals under multiplication
(primes are integers, factorization goes through sympy) and a free semigroup
over named prime symbols. Both have the trivial unit group.
"""

import logging
import math
import re
from dataclasses import dataclass
from enum import Enum
from functools import reduce

from sympy import factorint, isprime

from fcsg_minors.config import NATURALS_LIMIT, UNIT_IDENTITY
from fcsg_minors.errors import ContextMismatchError, InputError, ResourceLimitError
from fcsg_minors.helpers import json_number, label_key, parse_int

logger = logging.getLogger(__name__)

SYMBOL_PATTERN = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class Backend(str, Enum):
    NATURALS = "naturals"
    FREE = "free"


@dataclass(frozen=True)
class PrimeSymbol:
    """A prime element; an integer prime or an interned symbol name."""

    id: object

    def sort_key(self):
        return label_key(self.id)

    def __str__(self):
        return str(self.id)


def _compose_units(left, right):
    # Trivial group: every tag is the identity
    return UNIT_IDENTITY


@dataclass(frozen=True)
class FactoredElement:
    backend: Backend
    exponents: tuple = ()
    unit_tag: int = UNIT_IDENTITY

    def __post_init__(self):
        if self.unit_tag != UNIT_IDENTITY:
            raise InputError(f"unit group is trivial; unit tag {self.unit_tag!r} is not its identity")
        previous = None
        for symbol, exponent in self.exponents:
            if not isinstance(symbol, PrimeSymbol):
                raise InputError(f"expected a PrimeSymbol, got {symbol!r}")
            if isinstance(exponent, bool) or not isinstance(exponent, int) or exponent < 1:
                raise InputError(f"exponent of {symbol} must be a positive integer, got {exponent!r}")
            if previous is not None and not previous.sort_key() < symbol.sort_key():
                raise InputError("prime symbols must be distinct and sorted ascending")
            _check_symbol(self.backend, symbol)
            previous = symbol

    @classmethod
    def from_mapping(cls, backend, mapping):
        """Build the canonical element from a symbol -> exponent mapping

        Zero exponents are dropped, so min/sum results can be passed as is.

        Args:
            backend (Backend): Backend the symbols belong to
            mapping (dict): PrimeSymbol -> non-negative int

        Returns:
            FactoredElement: Canonical element
        """
        for symbol, exponent in mapping.items():
            if isinstance(exponent, bool) or not isinstance(exponent, int) or exponent < 0:
                raise InputError(f"exponent of {symbol} must be a non-negative integer, got {exponent!r}")
        items = sorted(
            ((symbol, exponent) for symbol, exponent in mapping.items() if exponent > 0),
            key=lambda item: item[0].sort_key(),
        )
        return cls(Backend(backend), tuple(items))

    def as_dict(self):
        return dict(self.exponents)

    def exponent(self, symbol):
        return self.as_dict().get(symbol, 0)

    @property
    def is_unit(self):
        return not self.exponents

    @property
    def length(self):
        """Number of prime factors counted with multiplicity (the r of s = e p_1...p_r)."""
        return sum(exponent for _, exponent in self.exponents)

    def sort_key(self):
        if self.backend is Backend.NATURALS:
            return (evaluate(self),)
        return tuple((symbol.sort_key(), exponent) for symbol, exponent in self.exponents)

    def canonical_text(self):
        if self.backend is Backend.NATURALS:
            return str(evaluate(self))
        if self.is_unit:
            return "e"
        return "*".join(
            str(symbol) if exponent == 1 else f"{symbol}^{exponent}"
            for symbol, exponent in self.exponents
        )

    def __str__(self):
        return self.canonical_text()


def _check_symbol(backend, symbol):
    if backend is Backend.NATURALS:
        if isinstance(symbol.id, bool) or not isinstance(symbol.id, int) or not isprime(symbol.id):
            raise InputError(f"{symbol.id!r} is not a prime natural number")
    elif not isinstance(symbol.id, str) or not SYMBOL_PATTERN.match(symbol.id):
        raise InputError(f"{symbol.id!r} is not a valid free prime symbol name")


def same_backend(*elements):
    backends = {element.backend for element in elements}
    if len(backends) > 1:
        names = ", ".join(sorted(backend.value for backend in backends))
        raise ContextMismatchError(f"elements come from different backends: {names}")
    return backends.pop() if backends else None


def unit(backend=Backend.NATURALS):
    """The neutral element e of a backend."""
    return FactoredElement(Backend(backend))


def factorize(n):
    """Factor a natural number into its canonical form

    Args:
        n (int): Natural number, 1 <= n < 2**64

    Returns:
        FactoredElement: Naturals-backend element; 1 maps to the unit
    """
    n = parse_int(n, "natural number")
    if n < 1:
        raise InputError(f"{n} is not in the semigroup of naturals (which starts at 1)")
    if n >= NATURALS_LIMIT:
        raise ResourceLimitError(f"{n} exceeds the 64-bit range of the naturals backend")
    factors = factorint(n)
    return FactoredElement.from_mapping(
        Backend.NATURALS, {PrimeSymbol(int(p)): int(e) for p, e in factors.items()}
    )


def evaluate(a):
    """Multiply a naturals element back out to an integer."""
    if a.backend is not Backend.NATURALS:
        raise ContextMismatchError("only naturals-backend elements evaluate to integers")
    return math.prod(symbol.id**exponent for symbol, exponent in a.exponents)


def multiply(a, b):
    """Semigroup product: exponents add pointwise."""
    backend = same_backend(a, b)
    combined = a.as_dict()
    for symbol, exponent in b.exponents:
        combined[symbol] = combined.get(symbol, 0) + exponent
    product = FactoredElement.from_mapping(backend, combined)
    return FactoredElement(backend, product.exponents, _compose_units(a.unit_tag, b.unit_tag))


def gcd(a, b):
    """gcd as the prime product with pointwise minimum exponents

    The result always carries the identity unit tag.
    """
    backend = same_backend(a, b)
    right = b.as_dict()
    return FactoredElement.from_mapping(
        backend,
        {symbol: min(exponent, right.get(symbol, 0)) for symbol, exponent in a.exponents},
    )


def is_unit(a):
    return a.is_unit


def divides(a, b):
    """a | b, i.e. some f has f * a = b; pointwise <= on exponents."""
    same_backend(a, b)
    right = b.as_dict()
    return all(exponent <= right.get(symbol, 0) for symbol, exponent in a.exponents)


def set_product(elements, backend=Backend.NATURALS):
    """m(M): product of all elements, the unit for an empty set

    Args:
        elements (iterable): Elements of one backend
        backend (Backend): Backend whose unit is returned for an empty input

    Returns:
        FactoredElement: Product of the elements
    """
    elements = list(elements)
    if not elements:
        return unit(backend)
    same_backend(*elements)
    return reduce(multiply, elements)


@dataclass(frozen=True)
class SemigroupContext:
    """Backend plus, for the free backend, an optional closed prime universe.

    A free context with ``prime_universe=None`` admits every valid symbol name.
    """

    backend: Backend = Backend.NATURALS
    prime_universe: frozenset = None

    def __post_init__(self):
        object.__setattr__(self, "backend", Backend(self.backend))
        if self.prime_universe is not None:
            if self.backend is Backend.NATURALS:
                raise InputError("the naturals backend has a fixed prime universe")
            universe = frozenset(
                symbol if isinstance(symbol, PrimeSymbol) else PrimeSymbol(symbol)
                for symbol in self.prime_universe
            )
            for symbol in universe:
                _check_symbol(Backend.FREE, symbol)
            object.__setattr__(self, "prime_universe", universe)

    def validate(self, element):
        if element.backend is not self.backend:
            raise ContextMismatchError(
                f"element {element} belongs to the {element.backend.value} backend, "
                f"context is {self.backend.value}"
            )
        if self.prime_universe is not None:
            for symbol, _ in element.exponents:
                if symbol not in self.prime_universe:
                    raise InputError(f"prime symbol {symbol} is outside the context's universe")
        return element

    def unit(self):
        return unit(self.backend)

    def prime(self, name):
        symbol = name if isinstance(name, PrimeSymbol) else PrimeSymbol(name)
        return self.validate(FactoredElement(self.backend, ((symbol, 1),)))

    def element(self, value):
        """Build an element from an int (naturals) or a name -> exponent dict (free)."""
        if self.backend is Backend.NATURALS:
            return factorize(value)
        if not isinstance(value, dict):
            raise InputError(f"free-backend element must be a mapping of symbols to exponents, got {value!r}")
        mapping = {}
        for name, exponent in value.items():
            exponent = parse_int(exponent, f"exponent of {name}")
            if exponent < 1:
                raise InputError(f"exponent of {name} must be >= 1, got {exponent}")
            mapping[PrimeSymbol(name)] = exponent
        return self.validate(FactoredElement.from_mapping(Backend.FREE, mapping))

    def parse_element(self, document):
        """Parse the JSON element form of this backend

        Args:
            document: int / decimal string (naturals) or {"primes": {...}} (free)

        Returns:
            FactoredElement: Validated element
        """
        if self.backend is Backend.NATURALS:
            if isinstance(document, dict):
                raise InputError(f"naturals backend expects an integer, got {document!r}")
            return factorize(document)
        if not isinstance(document, dict) or set(document) != {"primes"}:
            raise InputError(f'free backend expects {{"primes": {{...}}}}, got {document!r}')
        return self.element(document["primes"])

    def format_element(self, element):
        self.validate(element)
        if self.backend is Backend.NATURALS:
            return json_number(evaluate(element))
        return {"primes": {str(symbol): exponent for symbol, exponent in element.exponents}}

    def parse_set(self, document):
        """Parse a JSON array of elements, keeping input order."""
        if not isinstance(document, list):
            raise InputError(f"an element set must be a JSON array, got {type(document).__name__}")
        return [self.parse_element(item) for item in document]

    def multiply(self, a, b):
        return multiply(self.validate(a), self.validate(b))

    def gcd(self, a, b):
        return gcd(self.validate(a), self.validate(b))

    def set_product(self, elements):
        return set_product([self.validate(element) for element in elements], self.backend)


def detect_backend(document):
    """Pick the backend a JSON element set is written for.

    Object entries mean the free backend; anything else is read as naturals.
    """
    if isinstance(document, list) and any(isinstance(item, dict) for item in document):
        return Backend.FREE
    return Backend.NATURALS
