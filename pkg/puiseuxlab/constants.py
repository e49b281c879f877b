from dataclasses import asdict, dataclass
from enum import Enum


class Verdict(Enum):
    PASS = ("pass", "check held on every instance")
    FAIL = ("fail", "check failed on at least one instance")
    UNKNOWN = ("unknown-at-budget", "search budget exhausted before a decision")

    @property
    def label(self) -> str:
        return self.value[0]

    @property
    def description(self) -> str:
        return self.value[1]


class AtomVerdict(Enum):
    ATOM = "atom-at-depth"
    REDUCIBLE = "reducible"
    UNIT = "unit"
    UNKNOWN = "unknown"

    @property
    def label(self) -> str:
        return self.value


class LinkStatus(Enum):
    PROPER = "proper"
    STABLE = "stable"
    NOT_ASCENDING = "not-ascending"
    UNVERIFIED = "unverified"

    @property
    def label(self) -> str:
        return self.value


class CandidateVerdict(Enum):
    VALID = "valid"
    INVALID = "invalid"
    UNKNOWN = "unknown-at-budget"

    @property
    def label(self) -> str:
        return self.value


class MonoidKind(Enum):
    EXPLICIT = "explicit"
    MQR = "mqr"

    @property
    def label(self) -> str:
        return self.value


class TopField(Enum):
    """Top field K of the tower Z ⊆ Q ⊆ K; value is (name, indeterminates allowed)."""

    Q = ("Q", frozenset())
    QS = ("Q(s)", frozenset({"s"}))
    QST = ("Q(s,t)", frozenset({"s", "t"}))

    @property
    def label(self) -> str:
        return self.value[0]

    @property
    def indeterminates(self) -> frozenset:
        return self.value[1]


class Suite(Enum):
    PROP_MQR = "prop-mqr"
    BINOMIALS = "binomials"
    TRINOMIALS = "trinomials"
    ASCENT = "ascent"
    SUBRING = "subring"
    NONASCENT = "nonascent"
    ALL = "all"

    @property
    def label(self) -> str:
        return self.value


class ExpressionKind(Enum):
    """What a parsed expression is converted into."""

    RATIONAL = "rational"
    RATFUNC = "ratfunc"
    POLYEXPR = "polyexpr"
    FPPOLY = "fppoly"
    SUBRING = "subring"
    RY = "ry"

    @property
    def label(self) -> str:
        return self.value


class OutputFormat(Enum):
    TEXT = "text"
    JSON = "json"


class ExitCode(Enum):
    PASS = 0
    FAIL = 1
    USAGE = 2


@dataclass(frozen=True)
class SearchBudget:
    """Bounds for membership and splitting searches in Puiseux monoids and F_p[M]."""

    depth: int = 6
    refinements: int = 1
    max_groupings: int = 4096

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class OracleConfig:
    """Where the irreducibility oracle switches from trial division to the Rabin test."""

    trial_division_degree: int = 12
    trial_division_limit: int = 5000

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class ProbeBudget:
    """Bounds for the member-split probe in R[y]."""

    multiplier_bound: int = 4
    max_groupings: int = 256

    def as_dict(self) -> dict:
        return asdict(self)


DEFAULT_SEARCH_BUDGET = SearchBudget()
DEFAULT_ORACLE_CONFIG = OracleConfig()
DEFAULT_PROBE_BUDGET = ProbeBudget()
