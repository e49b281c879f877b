from puiseuxlab.arith import RatFunc
from puiseuxlab.finite_field import FpElem, FpPoly
from puiseuxlab.monoid import GeneratorSchedule, PuiseuxMonoidSpec
from puiseuxlab.papercheck import run_papercheck
from puiseuxlab.parsing import parse_expression
from puiseuxlab.semidomain import PolyExpr
from puiseuxlab.subring import RYPoly, SubringPoly, TowerSpec

__all__ = [
    "FpElem",
    "FpPoly",
    "GeneratorSchedule",
    "PolyExpr",
    "PuiseuxMonoidSpec",
    "RYPoly",
    "RatFunc",
    "SubringPoly",
    "TowerSpec",
    "parse_expression",
    "run_papercheck",
]
