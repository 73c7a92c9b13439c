"""Signs are the one-character strings ``'-'`` and ``'+'``."""

SIGNS = ("-", "+")


def check_sign(sign):
    if sign not in SIGNS:
        raise ValueError(f"sign must be '-' or '+', got {sign!r}")
    return sign


def neg(sign):
    return "+" if sign == "-" else "-"


def value(sign):
    return -1 if sign == "-" else 1


def from_value(v):
    if v not in (-1, 1):
        raise ValueError(f"not a sign value: {v}")
    return "-" if v < 0 else "+"


def twist(sign, k):
    """The sign (-)^k * sign."""
    return sign if k % 2 == 0 else neg(sign)
