"""
Tableaux and Cyclic Sieving

Exact integer polynomials in q, partitions, standard Young tableaux and
the major index, the q-hook-length formula, and the cyclic sieving check
for Theta^{n(n-1)} on the all-refraction cycle.
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, Iterator, List, Tuple, Union

import numpy as np

from .constants import EdgeMaterial, SievingDefaults
from .dynamics import OrbitReport, orbit_size_table, state_space
from .exceptions import (
    CapacityExceeded,
    InternalMismatch,
    RootOfUnityMismatch,
    ValidationError,
    VerificationError,
)
from .graph_core import BilliardsGraph, Labeling
from .predictors import cycle_invariants

logger = logging.getLogger(__name__)

_SUPERSCRIPTS = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


# =============================================================================
# Polynomials
# =============================================================================


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial in q with exact integer coefficients

    coeffs[d] is the coefficient of q^d; trailing zeros are stripped.
    """

    coeffs: Tuple[int, ...] = ()

    def __post_init__(self):
        coeffs = [int(c) for c in self.coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def constant(cls, c: int) -> "IntPolynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c: int = 1) -> "IntPolynomial":
        return cls((0,) * degree + (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def _coerce(self, other: Union["IntPolynomial", int]) -> "IntPolynomial":
        if isinstance(other, IntPolynomial):
            return other
        if isinstance(other, int):
            return IntPolynomial.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        size = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (size - len(self.coeffs))
        b = other.coeffs + (0,) * (size - len(other.coeffs))
        return IntPolynomial(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        product = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    product[i + j] += x * y
        return IntPolynomial(tuple(product))

    __rmul__ = __mul__

    def divmod(
        self, divisor: "IntPolynomial"
    ) -> Tuple["IntPolynomial", "IntPolynomial"]:
        """
        Synthetic division by a polynomial with leading coefficient +-1.

        Returns:
            (quotient, remainder)
        """
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lead = divisor.coeffs[-1]
        if lead not in (1, -1):
            raise ValueError("divisor must be monic up to sign")

        remainder = list(self.coeffs)
        shift = len(remainder) - len(divisor.coeffs)
        if shift < 0:
            return IntPolynomial(), self
        quotient = [0] * (shift + 1)
        for d in range(shift, -1, -1):
            factor = remainder[d + divisor.degree] * lead
            quotient[d] = factor
            if factor:
                for j, c in enumerate(divisor.coeffs):
                    remainder[d + j] -= factor * c
        return IntPolynomial(tuple(quotient)), IntPolynomial(tuple(remainder))

    def exact_div(self, divisor: "IntPolynomial") -> "IntPolynomial":
        """Quotient of an exact division; a remainder is an error."""
        quotient, remainder = self.divmod(divisor)
        if not remainder.is_zero():
            raise InternalMismatch(
                "polynomial division left a remainder",
                context={"dividend": self, "divisor": divisor},
            )
        return quotient

    def __call__(self, x):
        result = 0
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    def at_roots_of_unity(self, order: int) -> np.ndarray:
        """Values at e^{2 pi i j / order} for j = 0..order-1 (complex)."""
        roots = np.exp(2j * np.pi * np.arange(order) / order)
        if self.is_zero():
            return np.zeros(order, dtype=complex)
        return np.polynomial.polynomial.polyval(
            roots, np.array(self.coeffs, dtype=float)
        )

    def to_list(self) -> List[int]:
        return list(self.coeffs)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for d, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if d == 0:
                terms.append(str(c))
                continue
            power = "q" if d == 1 else "q" + str(d).translate(_SUPERSCRIPTS)
            prefix = "" if c == 1 else "-" if c == -1 else str(c)
            terms.append(prefix + power)
        return " + ".join(terms).replace("+ -", "- ")


def q_integer(k: int) -> IntPolynomial:
    """[k]_q = 1 + q + ... + q^{k-1}"""
    return IntPolynomial((1,) * k)


def q_factorial(k: int) -> IntPolynomial:
    """[k]_q! = [1]_q [2]_q ... [k]_q"""
    result = IntPolynomial.constant(1)
    for j in range(1, k + 1):
        result = result * q_integer(j)
    return result


# =============================================================================
# Partitions and tableaux
# =============================================================================


@dataclass(frozen=True)
class Partition:
    """Integer partition, parts weakly decreasing"""

    parts: Tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if any(p <= 0 for p in parts) or any(
            a < b for a, b in zip(parts, parts[1:])
        ):
            raise ValidationError(
                "parts must be positive and weakly decreasing",
                field="parts",
                value=parts,
            )
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(
            tuple(
                sum(1 for p in self.parts if p > col)
                for col in range(self.parts[0])
            )
        )

    def hook_lengths(self) -> List[int]:
        """Hook length of every box, read row by row."""
        columns = self.conjugate().parts
        return [
            (row_length - col) + (columns[col] - row) - 1
            for row, row_length in enumerate(self.parts)
            for col in range(row_length)
        ]

    def b_statistic(self) -> int:
        """b(lambda) = sum of (i - 1) * lambda_i"""
        return sum(i * p for i, p in enumerate(self.parts))

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"


def partitions_of(N: int) -> List[Partition]:
    """All partitions of N in lexicographically decreasing order."""
    if N < 0:
        raise ValidationError("must be non-negative", field="N", value=N)

    def generate(remaining: int, largest: int) -> Iterator[Tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for part in range(min(remaining, largest), 0, -1):
            for rest in generate(remaining - part, part):
                yield (part,) + rest

    return [Partition(parts) for parts in generate(N, N)]


@dataclass(frozen=True)
class Tableau:
    """Standard Young tableau; rows[r][c] holds the entry in box (r, c)"""

    rows: Tuple[Tuple[int, ...], ...]

    @property
    def shape(self) -> Partition:
        return Partition(tuple(len(r) for r in self.rows))

    def row_of(self) -> Dict[int, int]:
        return {
            value: r for r, row in enumerate(self.rows) for value in row
        }

    def descents(self) -> List[int]:
        """Entries i such that i + 1 sits in a strictly lower row."""
        rows = self.row_of()
        return [i for i in range(1, len(rows)) if rows[i + 1] > rows[i]]

    def maj(self) -> int:
        return sum(self.descents())


def standard_tableaux(lam: Partition) -> List[Tableau]:
    """
    All standard Young tableaux of shape lam.

    Values 1..N are placed in turn into any row that is shorter than its
    part and shorter than the row above.
    """
    parts = lam.parts
    N = lam.size
    results: List[Tableau] = []
    rows: List[List[int]] = [[] for _ in parts]

    def place(value: int) -> None:
        if value > N:
            results.append(Tableau(tuple(tuple(r) for r in rows)))
            return
        for r, part in enumerate(parts):
            length = len(rows[r])
            if length < part and (r == 0 or len(rows[r - 1]) > length):
                rows[r].append(value)
                place(value + 1)
                rows[r].pop()

    place(1)
    return results


def maj(t: Tableau) -> int:
    return t.maj()


def maj_generating_function(lam: Partition) -> IntPolynomial:
    """Sum of q^maj(T) over standard tableaux T of shape lam."""
    counts: Dict[int, int] = {}
    for t in standard_tableaux(lam):
        counts[t.maj()] = counts.get(t.maj(), 0) + 1
    if not counts:
        return IntPolynomial()
    return IntPolynomial(
        tuple(counts.get(d, 0) for d in range(max(counts) + 1))
    )


def q_hook_formula(lam: Partition) -> IntPolynomial:
    """q^b(lam) [N]_q! / prod over boxes of [hook]_q, by exact division."""
    result = q_factorial(lam.size)
    for hook in lam.hook_lengths():
        result = result.exact_div(q_integer(hook))
    return IntPolynomial.monomial(lam.b_statistic()) * result


@lru_cache(maxsize=None)
def f_poly(lam: Partition) -> IntPolynomial:
    """
    f^lam(q), computed from the major index and from the hook formula.

    Raises:
        InternalMismatch: If the two computations disagree
    """
    by_maj = maj_generating_function(lam)
    by_hooks = q_hook_formula(lam)
    if by_maj != by_hooks:
        raise InternalMismatch(
            "maj generating function differs from q-hook formula",
            context={"shape": str(lam), "maj": by_maj, "hooks": by_hooks},
        )
    return by_maj


def f_div_count(
    lam: Partition,
    N: int,
    tolerance: float = SievingDefaults.ROOT_TOLERANCE,
) -> int:
    """
    Number of standard tableaux of shape lam whose maj is divisible by N.

    The direct count is checked against (1/N) sum_j f^lam(e^{2 pi i j/N}).

    Raises:
        RootOfUnityMismatch: If the average is not within tolerance of an
            integer
        InternalMismatch: If the rounded average differs from the count
    """
    if N < 1:
        raise ValidationError("must be positive", field="N", value=N)
    direct = sum(1 for t in standard_tableaux(lam) if t.maj() % N == 0)

    average = f_poly(lam).at_roots_of_unity(N).sum() / N
    nearest = round(average.real)
    if abs(average - nearest) > tolerance:
        raise RootOfUnityMismatch(
            "root-of-unity average is not an integer",
            context={"shape": str(lam), "N": N, "average": average},
        )
    if nearest != direct:
        raise InternalMismatch(
            "root-of-unity average differs from the direct count",
            context={"shape": str(lam), "N": N, "direct": direct},
        )
    return direct


def csp_polynomial(n: int) -> IntPolynomial:
    """
    F(q) = 2 n^2 (n-1) sum over lam |- n-1 of f^lam_{n-1|maj} f^lam(q).

    Raises:
        ValidationError: If n is odd or smaller than 4
    """
    if n < 4 or n % 2:
        raise ValidationError("must be even and at least 4", "n", n)
    total = IntPolynomial()
    for lam in partitions_of(n - 1):
        count = f_div_count(lam, n - 1)
        if count:
            total = total + count * f_poly(lam)
    return (2 * n * n * (n - 1)) * total


# =============================================================================
# Gamma counts
# =============================================================================


@lru_cache(maxsize=8)
def _symmetric_group(M: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(M))), dtype=np.int8)


def gamma_count(
    M: int, k: int, max_m: int = SievingDefaults.MAX_GAMMA_M
) -> int:
    """
    |{xi in S_M : c^k xi c^j = xi for some j}| with c the M-cycle.

    Raises:
        CapacityExceeded: If M is above max_m
    """
    if M < 1:
        raise ValidationError("must be positive", field="M", value=M)
    if M > max_m:
        raise CapacityExceeded(
            "symmetric group too large", limit=max_m, requested=M
        )
    perms = _symmetric_group(M).astype(np.int64)
    found = np.zeros(len(perms), dtype=bool)
    for j in range(M):
        # (c^k xi c^j)(x) = xi(x + j) + k, all mod M
        shifted = (np.roll(perms, -j, axis=1) + k) % M
        found |= (shifted == perms).all(axis=1)
    return int(found.sum())


def all_refract_cycle(n: int) -> BilliardsGraph:
    return BilliardsGraph.cycle([EdgeMaterial.REFRACT] * n)


def gamma_from_periods(n: int, k: int) -> int:
    """
    |{sigma : sigma(v_n) = 1 and p_sigma divides k}| on the all-refraction
    n-cycle.
    """
    g = all_refract_cycle(n)
    count = 0
    for rest in itertools.permutations(range(2, n + 1)):
        sigma = Labeling(rest + (1,))
        if k % cycle_invariants(g, sigma).p == 0:
            count += 1
    return count


# =============================================================================
# Cyclic sieving verification
# =============================================================================


@dataclass(frozen=True)
class CspRow:
    """Checks for Theta^{k n (n-1)}"""

    n: int
    k: int
    fixed: int
    f_at_root: int
    gamma: int
    gamma_by_period: int
    fixed_labelings: int

    @property
    def match(self) -> bool:
        return self.fixed == self.f_at_root

    @property
    def gamma_match(self) -> bool:
        return (
            self.fixed == 2 * self.n * self.n * self.gamma
            and self.gamma == self.gamma_by_period
            and self.fixed_labelings == self.n * self.gamma
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "fixed": self.fixed,
            "F_at_root": self.f_at_root,
            "match": self.match,
            "gamma": self.gamma,
            "gamma_match": self.gamma_match,
        }


@dataclass(frozen=True)
class CspReport:
    """Outcome of verify_csp"""

    n: int
    polynomial: IntPolynomial
    rows: Tuple[CspRow, ...]
    order: int
    expected_order: int
    sizes_divisible: bool
    failures: Tuple[str, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "F": self.polynomial.to_list(),
            "k": [row.to_dict() for row in self.rows],
            "order": self.order,
            "expected_order": self.expected_order,
            "sizes_divisible": self.sizes_divisible,
            "ok": self.ok,
            "failures": list(self.failures),
        }

    def raise_for_mismatch(self) -> None:
        if self.failures:
            raise VerificationError(
                "cyclic sieving check failed",
                context={"n": self.n, "failures": "; ".join(self.failures)},
            )


def verify_csp(
    n: int,
    workers: int = 1,
    tolerance: float = SievingDefaults.ROOT_TOLERANCE,
) -> CspReport:
    """
    Check the cyclic sieving triple for Theta^{n(n-1)} on the
    all-refraction n-cycle.

    For k = 0..n-2 the number of states fixed by Theta^{k n (n-1)} must
    equal F(e^{2 pi i k/(n-1)}) and 2 n n |Gamma_k|; every orbit size must
    be a multiple of n(n-1); Theta^{n(n-1)} must have order 1 for n = 4
    and n-1 otherwise.

    Raises:
        ValidationError: If n is odd or below 4
        CapacityExceeded: If n is above the supported maximum
        RootOfUnityMismatch: If some F(zeta^k) is not near an integer
    """
    if n < 4 or n % 2:
        raise ValidationError("must be even and at least 4", "n", n)
    if n > SievingDefaults.MAX_CSP_N:
        raise CapacityExceeded(
            "cyclic sieving check too large",
            limit=SievingDefaults.MAX_CSP_N,
            requested=n,
        )

    g = all_refract_cycle(n)
    period = n * (n - 1)
    sizes = orbit_size_table(g, workers)
    report = OrbitReport.from_size_table(n, sizes)
    polynomial = csp_polynomial(n)
    values = polynomial.at_roots_of_unity(n - 1)

    # Orbit size of every (sigma, 1, 1), for the labeling count
    space = state_space(n)
    base_ranks = np.arange(len(space.perms), dtype=np.int64) * n * 2
    base_sizes = sizes[base_ranks]

    failures: List[str] = []
    rows = []
    for k in range(n - 1):
        value = values[k]
        nearest = round(value.real)
        if abs(value - nearest) > tolerance:
            raise RootOfUnityMismatch(
                "F at a root of unity is not an integer",
                context={"n": n, "k": k, "value": value},
            )
        row = CspRow(
            n=n,
            k=k,
            fixed=report.fixed_points(k * period),
            f_at_root=int(nearest),
            gamma=gamma_count(n - 1, k),
            gamma_by_period=gamma_from_periods(n, k),
            fixed_labelings=int(
                np.count_nonzero((k * period) % base_sizes == 0)
            ),
        )
        rows.append(row)
        if not row.match:
            failures.append(
                f"k={k}: fixed {row.fixed} != F(zeta^k) {row.f_at_root}"
            )
        if not row.gamma_match:
            failures.append(
                f"k={k}: fixed {row.fixed}, gamma {row.gamma}, "
                f"gamma by period {row.gamma_by_period}, "
                f"fixed labelings {row.fixed_labelings}"
            )
        logger.info("CSP n=%d k=%d fixed=%d", n, k, row.fixed)

    sizes_divisible = all(size % period == 0 for size, _ in report.orbits)
    if not sizes_divisible:
        failures.append(f"some orbit size is not a multiple of {period}")

    order = report.order_of_power(period)
    expected_order = 1 if n == 4 else n - 1
    if order != expected_order:
        failures.append(f"order of Theta^{period} is {order}")

    return CspReport(
        n=n,
        polynomial=polynomial,
        rows=tuple(rows),
        order=order,
        expected_order=expected_order,
        sizes_divisible=sizes_divisible,
        failures=tuple(failures),
    )
