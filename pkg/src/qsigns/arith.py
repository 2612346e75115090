"""Number-theoretic primitives.

Kronecker symbols, real Dirichlet characters given by a Kronecker-symbol
top, fundamental discriminants, square-free decomposition and divisor
enumeration.  Everything here is a pure function of its arguments.
"""

from __future__ import annotations

from dataclasses import dataclass


def kronecker(a: int, n: int) -> int:
    """Extended Kronecker symbol (a/n) for arbitrary integers a, n.

    Completely multiplicative in both arguments.  (a/0) is 1 for a = +-1
    and 0 otherwise; (a/-1) is -1 exactly when a < 0.
    """
    if n == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -1
    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        # (a/2) = 1 if a = +-1 mod 8, -1 if a = +-3 mod 8.
        twos = 0
        while n % 2 == 0:
            n //= 2
            twos += 1
        if twos % 2 == 1 and a % 8 in (3, 5):
            sign = -sign
    # n is now odd and positive: Jacobi symbol by quadratic reciprocity.
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0


def chi_t_N(k: int, N: int, t: int, d: int) -> int:
    """Quadratic character ((-1)^k N^2 t / d) attached to a square-free t."""
    if t < 1 or not is_squarefree(t):
        raise ValueError("t must be a square-free positive integer")
    if N % 4 != 0:
        raise ValueError("level N must be divisible by 4")
    return kronecker((-1) ** k * N * N * t, d)


def chi_star(chi: "DirichletCharacter", k: int, a: int) -> int:
    """Twist chi by the k-th power of the character (-4/.)."""
    return kronecker(-4, a) ** k * chi(a)


def is_squarefree(n: int) -> bool:
    """True when no square of a prime divides n (n >= 1)."""
    if n < 1:
        raise ValueError("expected a positive integer")
    if n % 4 == 0:
        return False
    if n % 2 == 0:
        n //= 2
    if n % 9 == 0:
        return False
    if n % 3 == 0:
        n //= 3
    d = 5
    # Each divisor found is removed completely (a repeat means a square),
    # so composite trial values can never fire.
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return False
        d += 2
    return True


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write n = t * m^2 with t square-free; returns (t, m)."""
    if n < 1:
        raise ValueError("expected a positive integer")
    t, m = 1, 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            m *= d ** (e // 2)
            if e % 2:
                t *= d
        d += 1 if d == 2 else 2
    return t * n, m


def is_fundamental_discriminant(d: int) -> bool:
    """True for d = 1, square-free d = 1 mod 4, and 4m with m = 2,3 mod 4
    square-free.  d = 0 is rejected."""
    if d == 0:
        raise ValueError("0 is not a discriminant")
    r = d % 4
    if r == 1:
        return is_squarefree(abs(d))
    if r == 0:
        m = d // 4
        return m % 4 in (2, 3) and is_squarefree(abs(m))
    return False


def divisors(n: int) -> list[int]:
    """Ascending list of the positive divisors of n."""
    if n < 1:
        raise ValueError("expected a positive integer")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test (intended for small n)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    d = 5
    while d * d <= n:
        if n % d == 0 or n % (d + 2) == 0:
            return False
        d += 6
    return True


def _default_period(top: int) -> int:
    # (top/.) is periodic with period |top| when top = 0,1 mod 4,
    # and with period 4|top| otherwise.
    return abs(top) if top % 4 in (0, 1) else 4 * abs(top)


@dataclass(frozen=True)
class DirichletCharacter:
    """Real Dirichlet character a -> (top/a), with modulus metadata.

    Only real characters are supported; the modulus is a period of the
    character (not necessarily the conductor).
    """

    top: int
    modulus: int = 0
    is_trivial: bool = False

    def __post_init__(self):
        if self.top == 0:
            raise ValueError("character top must be nonzero")
        if self.modulus == 0:
            object.__setattr__(self, "modulus", _default_period(self.top))
        if self.modulus < 1:
            raise ValueError("modulus must be positive")

    @classmethod
    def trivial(cls, N: int) -> "DirichletCharacter":
        """The trivial character modulo N (1 on units, 0 elsewhere)."""
        if N < 1:
            raise ValueError("modulus must be positive")
        return cls(top=N * N, modulus=N, is_trivial=True)

    @classmethod
    def quadratic(cls, D: int) -> "DirichletCharacter":
        """The primitive quadratic character (D/.) for a fundamental
        discriminant D (or D = 1, giving the trivial character mod 1)."""
        if D == 1:
            return cls.trivial(1)
        if not is_fundamental_discriminant(D):
            raise ValueError("top of a primitive quadratic character must be "
                             "a fundamental discriminant, got %d" % D)
        return cls(top=D, modulus=abs(D))

    def value(self, a: int) -> int:
        return kronecker(self.top, a)

    __call__ = value

    @property
    def is_odd(self) -> bool:
        """True when the character takes -1 at -1."""
        return self.top < 0

    @property
    def is_even(self) -> bool:
        return self.top > 0

    @property
    def is_primitive(self) -> bool:
        return self.top == 1 or is_fundamental_discriminant(self.top)


def chi_t_N_character(k: int, N: int, t: int) -> DirichletCharacter:
    """The character d -> chi_t_N(k, N, t, d) as a DirichletCharacter."""
    if t < 1 or not is_squarefree(t):
        raise ValueError("t must be a square-free positive integer")
    if N % 4 != 0:
        raise ValueError("level N must be divisible by 4")
    return DirichletCharacter(top=(-1) ** k * N * N * t)
