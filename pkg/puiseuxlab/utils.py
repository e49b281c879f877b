import json
import math
from enum import Enum
from fractions import Fraction
from importlib.resources import files
from pathlib import Path
from typing import Any, Iterable, Union

from sympy import isprime, primefactors

from puiseuxlab.errors import LabDomainError


def prune_empty_values(dictionary: dict) -> dict:
    """Remove null elements from a dict."""
    pruned = {}
    for k, v in dictionary.items():
        if v is not None:  # Specifically looking for None, not just falsey values.
            pruned[k] = v
    return pruned


def require_prime(p: int, name: str = "p") -> int:
    if not isinstance(p, int) or isinstance(p, bool):
        raise TypeError(f"Arg `{name}` must be an integer.")
    if not isprime(p):
        raise LabDomainError("arith.not-prime", f"{name} = {p} is not prime.", data={name: p})
    return p


def prime_factors(n: int) -> list:
    """Distinct prime factors of |n|, ascending; empty for 0 and ±1."""
    if n in (0, 1, -1):
        return []
    return [int(f) for f in primefactors(abs(n))]


def to_jsonable(value: Any) -> Any:
    """Convert report payloads (fractions, enums, tuples, objects with as_dict) to JSON-ready values."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Enum):
        return getattr(value, "label", value.value)
    if hasattr(value, "as_dict"):
        return to_jsonable(value.as_dict())
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [to_jsonable(v) for v in value]
        return sorted(items, key=str) if isinstance(value, (set, frozenset)) else items
    return str(value)


def load_data_file(name: Union[str, Path]) -> Any:
    """
    Load a JSON corpus.

    A plain name refers to a file shipped in puiseuxlab/data; a Path is read from the filesystem.
    """
    try:
        if isinstance(name, Path):
            text = name.read_text(encoding="utf-8")
        else:
            text = files("puiseuxlab").joinpath("data", name).read_text(encoding="utf-8")
    except OSError as exc:
        raise LabDomainError("data.unreadable", f"Cannot read {name}.", data={"reason": str(exc)}) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise LabDomainError(
            "data.bad-json", f"{name} is not valid JSON: {exc.msg} at line {exc.lineno}."
        ) from exc


def lcm_all(values: Iterable[int]) -> int:
    return math.lcm(1, *values)


def format_power(variable: str, exponent: Fraction) -> str:
    """x, x^3 or x^(17/72); the empty string for exponent 0."""
    exponent = Fraction(exponent)
    if exponent == 0:
        return ""
    if exponent == 1:
        return variable
    if exponent.denominator == 1 and exponent > 0:
        return f"{variable}^{exponent.numerator}"
    return f"{variable}^({exponent})"


def format_term(coefficient: Any, monomial: str) -> str:
    """Join a coefficient and a monomial, dropping a unit coefficient."""
    if not monomial:
        return str(coefficient)
    if coefficient == 1:
        return monomial
    if coefficient == -1:
        return f"-{monomial}"
    text = str(coefficient)
    if " " in text:
        text = f"({text})"
    return f"{text}*{monomial}"


def join_terms(terms: list) -> str:
    if not terms:
        return "0"
    text = terms[0]
    for term in terms[1:]:
        text += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return text
