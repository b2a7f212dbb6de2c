"""Harmonic and restricted composition sums modulo prime powers, with a
congruence verification harness and modular constant recovery."""

from .bernoulli import EXACT_CAP, PoleError, bernoulli_exact, bernoulli_mod_p
from .compsum import (
    BRUTEFORCE_TARGET_CAP,
    CompSumSpec,
    ScaleGuardError,
    beta_n,
    comp_sum,
    comp_sum_bruteforce,
    count_solutions,
    count_solutions_exact,
    gamma_n,
    r_spec,
    s_spec,
)
from .mhs import Composition, mhs, mhs_restricted, unordered_sum, unordered_sum_bruteforce
from .modring import (
    NonUnitError,
    PrimePowerModulus,
    Residue,
    binomial_mod,
    inv,
    is_prime,
    is_unit,
    rational_to_residue,
)
from .ratrecon import (
    DuplicatePrimeError,
    InsufficientDataError,
    ReconstructionResult,
    ResidueObservation,
    crt_combine,
    hunt_constant,
    reconstruct,
)
from .verifier import (
    CLAIMS,
    Claim,
    ClaimInstance,
    ClaimReport,
    EvalContext,
    GridSpec,
    instance_from_params,
    primes_between,
    sweep,
    verify,
)

__version__ = "0.1.0"

__all__ = [
    "EXACT_CAP",
    "PoleError",
    "bernoulli_exact",
    "bernoulli_mod_p",
    "BRUTEFORCE_TARGET_CAP",
    "CompSumSpec",
    "ScaleGuardError",
    "beta_n",
    "comp_sum",
    "comp_sum_bruteforce",
    "count_solutions",
    "count_solutions_exact",
    "gamma_n",
    "r_spec",
    "s_spec",
    "Composition",
    "mhs",
    "mhs_restricted",
    "unordered_sum",
    "unordered_sum_bruteforce",
    "NonUnitError",
    "PrimePowerModulus",
    "Residue",
    "binomial_mod",
    "inv",
    "is_prime",
    "is_unit",
    "rational_to_residue",
    "DuplicatePrimeError",
    "InsufficientDataError",
    "ReconstructionResult",
    "ResidueObservation",
    "crt_combine",
    "hunt_constant",
    "reconstruct",
    "CLAIMS",
    "Claim",
    "ClaimInstance",
    "ClaimReport",
    "EvalContext",
    "GridSpec",
    "instance_from_params",
    "primes_between",
    "sweep",
    "verify",
    "__version__",
]
