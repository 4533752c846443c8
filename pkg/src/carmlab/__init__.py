"""carmlab: exact enumeration of Carmichael numbers and Fermat pseudoprimes,
the explicit constants governing their counting functions, the closed-form
bounds and heuristics, a quadratic-ring probable prime test, and the bundled
reference tables the desk-scale computations are checked against.
"""

from .carmichael import (
    CarmichaelRecord,
    enumerate_carmichael_kprime,
    enumerate_carmichael_sieve,
    is_carmichael,
)
from .core_arith import Factorization, SpfTable, factorize, is_prime
from .dataset import PaperDataset, load_dataset
from .pseudoprime import count_psp, extend_psp, fermat_survivors, is_fermat_psp
from .tables import CountTable

__version__ = "0.1.0"

__all__ = [
    "CarmichaelRecord",
    "CountTable",
    "Factorization",
    "PaperDataset",
    "SpfTable",
    "__version__",
    "count_psp",
    "enumerate_carmichael_kprime",
    "enumerate_carmichael_sieve",
    "extend_psp",
    "factorize",
    "fermat_survivors",
    "is_carmichael",
    "is_fermat_psp",
    "is_prime",
    "load_dataset",
]
