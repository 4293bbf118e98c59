"""Exact scalars and mu-deformed combinatorics.

Every quantity here is an exact :class:`fractions.Fraction`. Floating point
conversion is left to callers that need square roots.
"""

from fractions import Fraction


def as_rational(value):
    """Convert an int, float, string ``"p/q"`` or Fraction to a Fraction.

    Floats are converted exactly (``0.25`` -> ``1/4``), so only pass floats
    that are exactly representable.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def _check_order(n, name="n"):
    if int(n) != n or n < 0:
        raise ValueError(f"{name} must be a non-negative integer, got {n!r}")
    return int(n)


def mu_number(n, mu):
    """Return the mu-number ``n + mu*(1 - (-1)**n)``.

    Even ``n`` gives ``n`` and odd ``n`` gives ``n + 2*mu``.
    """
    n = _check_order(n)
    mu = as_rational(mu)
    return Fraction(n) + (2 * mu if n % 2 else 0)


def mu_factorial(n, mu):
    """Product ``[n][n-1]...[1]`` of mu-numbers; the empty product is 1."""
    n = _check_order(n)
    out = Fraction(1)
    for i in range(1, n + 1):
        out *= mu_number(i, mu)
    return out


def mu_falling(j, n, mu):
    """Falling product ``[j][j-1]...[j-n+1]`` of mu-numbers.

    ``n = 0`` gives the empty product 1 and ``n = j + 1`` contains the
    factor ``[0] = 0``. Larger ``n`` would reach negative labels and is
    rejected.
    """
    j = _check_order(j, "j")
    n = _check_order(n)
    if n > j + 1:
        raise ValueError(f"falling product length {n} exceeds j+1 = {j + 1}")
    out = Fraction(1)
    for i in range(n):
        out *= mu_number(j - i, mu)
    return out


def pochhammer(a, n):
    """Rising factorial ``(a)_n = a(a+1)...(a+n-1)`` with ``(a)_0 = 1``."""
    n = _check_order(n)
    a = as_rational(a)
    out = Fraction(1)
    for i in range(n):
        out *= a + i
    return out


def parity_sign(n, j):
    """Return ``(-1)**(n*j - n*(n+1)/2)`` as +1 or -1."""
    n = _check_order(n)
    j = _check_order(j, "j")
    exponent = n * j - n * (n + 1) // 2
    return -1 if exponent % 2 else 1
